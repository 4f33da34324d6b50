#include "cc/clustering.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "cc/kernels.hpp"

namespace cc {

int PseudoLabeling::assigned_count() const {
  int n = 0;
  for (int l : labels) n += (l != kOutlier);
  return n;
}

int PseudoLabeling::outlier_count() const {
  return static_cast<int>(labels.size()) - assigned_count();
}

std::vector<int> PseudoLabeling::outliers() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == kOutlier) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::vector<int>> PseudoLabeling::members() const {
  std::vector<std::vector<int>> m(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kOutlier) m[labels[i]].push_back(static_cast<int>(i));
  }
  return m;
}

void PseudoLabeling::canonicalize() {
  // order clusters by their smallest member id
  std::vector<int> first_member(k, -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c != kOutlier && first_member[c] < 0) {
      first_member[c] = static_cast<int>(i);
    }
  }
  std::vector<int> order(k);
  for (int c = 0; c < k; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return first_member[a] < first_member[b];
  });
  std::vector<int> remap(k);
  for (int rank = 0; rank < k; ++rank) remap[order[rank]] = rank;
  for (auto& l : labels) {
    if (l != kOutlier) l = remap[l];
  }
}

namespace {

constexpr int kUnvisited = -3;
constexpr int kNoise = -2;

PseudoLabeling dbscan_from_neighbors(
    const std::vector<std::vector<int>>& neighbors, int min_pts) {
  const int n = static_cast<int>(neighbors.size());
  PseudoLabeling out;
  out.labels.assign(n, kUnvisited);
  int cid = 0;
  for (int i = 0; i < n; ++i) {
    if (out.labels[i] != kUnvisited) continue;
    if (static_cast<int>(neighbors[i].size()) < min_pts) {
      out.labels[i] = kNoise;
      continue;
    }
    out.labels[i] = cid;
    std::deque<int> seeds(neighbors[i].begin(), neighbors[i].end());
    while (!seeds.empty()) {
      const int j = seeds.front();
      seeds.pop_front();
      if (out.labels[j] == kNoise) out.labels[j] = cid;  // border claim
      if (out.labels[j] != kUnvisited) continue;
      out.labels[j] = cid;
      if (static_cast<int>(neighbors[j].size()) >= min_pts) {
        seeds.insert(seeds.end(), neighbors[j].begin(), neighbors[j].end());
      }
    }
    ++cid;
  }
  for (auto& l : out.labels) {
    if (l == kNoise) l = PseudoLabeling::kOutlier;
  }
  out.k = cid;
  out.canonicalize();
  return out;
}

}  // namespace

PseudoLabeling dbscan(const std::vector<FeatureVector>& features,
                      const DbscanParams& params) {
  if (features.empty()) throw EmptyInput("dbscan: no features");
  return dbscan_from_neighbors(kernels::neighbor_lists(features, params.eps),
                               params.min_pts);
}

PseudoLabeling dbscan_serial(const std::vector<FeatureVector>& features,
                             const DbscanParams& params) {
  if (features.empty()) throw EmptyInput("dbscan: no features");
  return dbscan_from_neighbors(
      kernels::neighbor_lists_serial(features, params.eps), params.min_pts);
}

std::vector<std::pair<int, double>> cluster_purity(
    const PseudoLabeling& labeling, const Dataset& dataset) {
  std::vector<std::pair<int, double>> result;
  for (int c = 0; c < labeling.k; ++c) result.emplace_back(c, 0.0);
  std::vector<std::map<int, int>> counts(labeling.k);
  std::vector<int> sizes(labeling.k, 0);
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    const int c = labeling.labels[i];
    if (c == PseudoLabeling::kOutlier) continue;
    counts[c][dataset.instances[i].truth.identity] += 1;
    sizes[c] += 1;
  }
  for (int c = 0; c < labeling.k; ++c) {
    int dominant = 0;
    for (const auto& [id, n] : counts[c]) dominant = std::max(dominant, n);
    result[c].second = static_cast<double>(dominant) / sizes[c];
  }
  return result;
}

double mean_cluster_purity(const PseudoLabeling& labeling,
                           const Dataset& dataset) {
  if (labeling.k == 0) return 0.0;
  double sum = 0.0;
  for (const auto& [c, p] : cluster_purity(labeling, dataset)) sum += p;
  return sum / labeling.k;
}

}  // namespace cc
