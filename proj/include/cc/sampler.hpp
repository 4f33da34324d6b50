#pragma once

#include <optional>
#include <vector>

#include "cc/clustering.hpp"
#include "cc/core.hpp"

namespace cc {

struct SamplerConfig {
  int p = 16;  // pseudo identities per batch
  int z = 16;  // instances per identity
  std::optional<int> cluster_cap;
  int iterations_per_epoch = 0;  // 0 = ceil(N_clustered / (p*z))
};

struct BatchEntry {
  int instance_id = 0;
  int cluster_id = 0;
};

// p * z entries; p distinct clusters, z entries each, grouped per cluster.
using Batch = std::vector<BatchEntry>;

// p clusters uniformly without replacement; z members per cluster without
// replacement when the cluster is large enough, with replacement otherwise.
// Outliers are never sampled. Throws TooFewClusters when K < p.
Batch sample_batch(const PseudoLabeling& labeling, const SamplerConfig& cfg,
                   Rng& rng);

// Clusters above cap keep a uniform random subset of cap members; the removed
// members become outliers for the epoch.
PseudoLabeling cap_clusters(const PseudoLabeling& labeling, int cap, Rng& rng);

int default_iterations(const PseudoLabeling& labeling, const SamplerConfig& cfg);

}  // namespace cc
