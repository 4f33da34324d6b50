#pragma once

#include <utility>
#include <vector>

#include "cc/core.hpp"

namespace cc {

struct DbscanParams {
  double eps = 0.5;  // cosine-distance radius, closed ball
  int min_pts = 4;   // neighborhood count including the point itself
};

/// Per-epoch pseudo labels: labels[i] is the cluster of instance i or
/// kOutlier. Cluster ids are canonical: ascending by smallest member id.
struct PseudoLabeling {
  static constexpr int kOutlier = -1;

  std::vector<int> labels;
  int k = 0;

  std::size_t size() const { return labels.size(); }
  int assigned_count() const;
  int outlier_count() const;
  std::vector<int> outliers() const;
  // cluster -> member instance ids, ascending
  std::vector<std::vector<int>> members() const;

  // renumber cluster ids by ascending smallest member id
  void canonicalize();
};

// Canonical DBSCAN over unit features with d(a,b) = 1 - a.b. Border points
// reachable from several clusters go to the cluster whose core claims them
// first in the ascending-id scan. Throws EmptyInput on no features.
PseudoLabeling dbscan(const std::vector<FeatureVector>& features,
                      const DbscanParams& params);
// Single-threaded twin (serial neighbor queries); identical output.
PseudoLabeling dbscan_serial(const std::vector<FeatureVector>& features,
                             const DbscanParams& params);

// Dominant ground-truth identity share per cluster.
std::vector<std::pair<int, double>> cluster_purity(
    const PseudoLabeling& labeling, const Dataset& dataset);

double mean_cluster_purity(const PseudoLabeling& labeling,
                           const Dataset& dataset);

}  // namespace cc
