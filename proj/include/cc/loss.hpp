#pragma once

#include "cc/core.hpp"
#include "cc/memory.hpp"

namespace cc {

struct LossConfig {
  double tau = 0.05;
};

struct LossResult {
  double value = 0.0;
  Vec grad_q;  // d value / d q; memory entries are constants
};

// -log softmax over q . rep_k / tau with the positive cluster on top.
// grad_q = (sum_k p_k rep_k - rep_+) / tau. Log-sum-exp is max-subtracted.
LossResult cluster_nce(const FeatureVector& q, const ClusterMemory& mem,
                       int positive, const LossConfig& cfg);

// Baseline: same math against centroids recomputed from the live bank.
LossResult centroid_nce(const FeatureVector& q, const InstanceMemory& mem,
                        int positive, const LossConfig& cfg);

// Shared core over an explicit representative list.
LossResult nce_against(const FeatureVector& q,
                       const std::vector<FeatureVector>& reps, int positive,
                       double tau);

}  // namespace cc
