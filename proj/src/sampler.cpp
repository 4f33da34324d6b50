#include "cc/sampler.hpp"

#include <string>

namespace cc {

Batch sample_batch(const PseudoLabeling& labeling, const SamplerConfig& cfg,
                   Rng& rng) {
  if (cfg.p < 1 || cfg.z < 1) {
    throw std::invalid_argument("sample_batch: p and z must be >= 1");
  }
  if (labeling.k < cfg.p) {
    throw TooFewClusters("sample_batch: need " + std::to_string(cfg.p) +
                         " clusters, have " + std::to_string(labeling.k));
  }
  const auto members = labeling.members();

  // partial Fisher-Yates: first p slots are the drawn clusters
  std::vector<int> clusters(labeling.k);
  for (int c = 0; c < labeling.k; ++c) clusters[c] = c;
  for (int i = 0; i < cfg.p; ++i) {
    const std::size_t j = i + rng.uniform_index(clusters.size() - i);
    std::swap(clusters[i], clusters[j]);
  }

  Batch batch;
  batch.reserve(static_cast<std::size_t>(cfg.p) * cfg.z);
  for (int i = 0; i < cfg.p; ++i) {
    const int c = clusters[i];
    const auto& ids = members[c];
    if (static_cast<int>(ids.size()) >= cfg.z) {
      std::vector<int> pool = ids;
      for (int s = 0; s < cfg.z; ++s) {
        const std::size_t j = s + rng.uniform_index(pool.size() - s);
        std::swap(pool[s], pool[j]);
        batch.push_back({pool[s], c});
      }
    } else {
      for (int s = 0; s < cfg.z; ++s) {
        batch.push_back({ids[rng.uniform_index(ids.size())], c});
      }
    }
  }
  return batch;
}

PseudoLabeling cap_clusters(const PseudoLabeling& labeling, int cap, Rng& rng) {
  if (cap < 1) throw std::invalid_argument("cap_clusters: cap must be >= 1");
  PseudoLabeling out = labeling;
  for (const auto& ids : labeling.members()) {
    if (static_cast<int>(ids.size()) <= cap) continue;
    std::vector<int> pool = ids;
    // keep the first cap slots of a partial shuffle
    for (int s = 0; s < cap; ++s) {
      const std::size_t j = s + rng.uniform_index(pool.size() - s);
      std::swap(pool[s], pool[j]);
    }
    for (std::size_t s = cap; s < pool.size(); ++s) {
      out.labels[pool[s]] = PseudoLabeling::kOutlier;
    }
  }
  return out;
}

int default_iterations(const PseudoLabeling& labeling,
                       const SamplerConfig& cfg) {
  if (cfg.iterations_per_epoch > 0) return cfg.iterations_per_epoch;
  const int batch = cfg.p * cfg.z;
  return (labeling.assigned_count() + batch - 1) / batch;
}

}  // namespace cc
