#include "cc/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cc {

LossResult nce_against(const FeatureVector& q,
                       const std::vector<FeatureVector>& reps, int positive,
                       double tau) {
  const int k = static_cast<int>(reps.size());
  if (k == 0) throw NoClusters("nce: no cluster representatives");
  if (positive < 0 || positive >= k) {
    throw std::out_of_range("nce: positive cluster " +
                            std::to_string(positive) + " out of range, K=" +
                            std::to_string(k));
  }
  if (tau <= 0.0) throw std::invalid_argument("nce: tau must be > 0");

  std::vector<double> logits(k);
  for (int c = 0; c < k; ++c) logits[c] = dot(q, reps[c]) / tau;
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (int c = 0; c < k; ++c) z += std::exp(logits[c] - max_logit);
  const double log_z = std::log(z) + max_logit;

  LossResult res;
  res.value = log_z - logits[positive];
  res.grad_q.assign(q.dim(), 0.0);
  for (int c = 0; c < k; ++c) {
    const double p = std::exp(logits[c] - log_z);
    const double coeff = (p - (c == positive ? 1.0 : 0.0)) / tau;
    for (std::size_t d = 0; d < q.dim(); ++d) {
      res.grad_q[d] += coeff * reps[c].values[d];
    }
  }
  return res;
}

LossResult cluster_nce(const FeatureVector& q, const ClusterMemory& mem,
                       int positive, const LossConfig& cfg) {
  return nce_against(q, mem.reps, positive, cfg.tau);
}

LossResult centroid_nce(const FeatureVector& q, const InstanceMemory& mem,
                        int positive, const LossConfig& cfg) {
  std::vector<FeatureVector> centroids;
  centroids.reserve(mem.k);
  for (int c = 0; c < mem.k; ++c) centroids.push_back(centroid(mem, c));
  return nce_against(q, centroids, positive, cfg.tau);
}

}  // namespace cc
