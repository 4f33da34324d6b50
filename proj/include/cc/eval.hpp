#pragma once

#include <utility>
#include <vector>

#include "cc/core.hpp"
#include "cc/encoder.hpp"

namespace cc {

struct RetrievalSplit {
  std::vector<int> query;    // instance ids
  std::vector<int> gallery;  // instance ids, disjoint from query
};

struct EvalOptions {
  bool junk_rule = true;  // exclude gallery items sharing id AND camera
  int max_rank = 10;
};

struct EvalReport {
  double map = 0.0;
  std::vector<double> cmc;  // cmc[r-1] = CMC@r
  int skipped_queries = 0;  // queries with no relevant gallery item
  double intra_mean = 0.0;  // mean cosine distance, same-identity pairs
  double inter_mean = 0.0;  // mean cosine distance, cross-identity pairs

  double cmc_at(int rank) const { return cmc.at(rank - 1); }
};

// Ranks gallery per query by descending cosine similarity (ties broken by
// ascending gallery id). AP averages precision at each relevant hit; mAP and
// CMC average over queries that keep at least one relevant item, the rest are
// counted as skipped. Throws NoCrossCameraRelevants when every query is
// skipped.
EvalReport evaluate(const Encoder& enc, const Dataset& dataset,
                    const RetrievalSplit& split, const EvalOptions& opts = {});
// Single-threaded twin; identical output.
EvalReport evaluate_serial(const Encoder& enc, const Dataset& dataset,
                           const RetrievalSplit& split,
                           const EvalOptions& opts = {});

// Mean cosine distance over same-identity and cross-identity pairs. Exact up
// to pair_threshold instances, fixed-seed sampled above it.
std::pair<double, double> class_distance_stats(const Encoder& enc,
                                               const Dataset& dataset,
                                               std::size_t pair_threshold = 2000);

}  // namespace cc
