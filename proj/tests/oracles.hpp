// Independent brute-force references used by unit and acceptance tests. These
// deliberately share no code with the library implementations they check.
#pragma once

#include <functional>
#include <vector>

#include "cc/core.hpp"

namespace oracle {

struct DbscanResult {
  std::vector<int> labels;  // -1 = noise, cluster ids canonical
  int k = 0;
};

// Textbook quadratic DBSCAN on a full distance matrix, closed ball, self
// included in the neighborhood count, ascending-id scan.
DbscanResult dbscan(const std::vector<cc::FeatureVector>& features, double eps,
                    int min_pts);

struct RetrievalResult {
  double map = 0.0;
  std::vector<double> cmc;
  int skipped = 0;
};

// Direct-definition mAP/CMC scan over explicit query/gallery features and
// ground-truth labels.
RetrievalResult retrieval(const std::vector<cc::FeatureVector>& query_feats,
                          const std::vector<int>& query_ids,
                          const std::vector<int>& query_identities,
                          const std::vector<int>& query_cameras,
                          const std::vector<cc::FeatureVector>& gallery_feats,
                          const std::vector<int>& gallery_ids,
                          const std::vector<int>& gallery_identities,
                          const std::vector<int>& gallery_cameras,
                          bool junk_rule, int max_rank);

// Central finite differences of f over xs, step h.
std::vector<double> finite_difference(std::vector<double>& xs,
                                      const std::function<double()>& f,
                                      double h = 1e-6);

double max_relative_error(const std::vector<double>& got,
                          const std::vector<double>& want,
                          double denom_floor = 1e-4);

}  // namespace oracle
