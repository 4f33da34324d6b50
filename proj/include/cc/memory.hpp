#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cc/clustering.hpp"
#include "cc/core.hpp"

namespace cc {

/// One representative per cluster, moved by momentum and re-normalized after
/// every update so q . rep stays on cosine scale.
struct ClusterMemory {
  std::vector<FeatureVector> reps;
  double momentum = 0.1;

  int k() const { return static_cast<int>(reps.size()); }
};

// reps start as the normalized mean of each cluster's member features.
ClusterMemory init_cluster_memory(const std::vector<FeatureVector>& features,
                                  const PseudoLabeling& labeling, double m);

// rep <- l2_normalize(m * rep + (1-m) * q)
void momentum_update(ClusterMemory& mem, const FeatureVector& q, int cluster);

// sequential per-query updates in batch order; later queries see earlier ones
void batch_update(ClusterMemory& mem,
                  const std::vector<std::pair<FeatureVector, int>>& batch);

/// Baseline bank (instance-level): stores every clustered feature verbatim,
/// centroids are recomputed from the live bank.
struct InstanceMemory {
  std::vector<FeatureVector> feats;       // one slot per clustered instance
  std::vector<int> instance_ids;          // slot -> instance id
  std::map<int, int> slot_of;             // instance id -> slot
  std::map<int, int> owner_cluster;       // instance id -> cluster id
  std::vector<std::vector<int>> members;  // cluster -> slots, ascending id
  double momentum = 0.1;
  int k = 0;
};

InstanceMemory init_instance_memory(const std::vector<FeatureVector>& features,
                                    const PseudoLabeling& labeling, double m);

// feats[instance] <- l2_normalize(m * old + (1-m) * q); same momentum form as
// the cluster memory so the ablation isolates granularity only
void instance_update(InstanceMemory& mem, int instance_id,
                     const FeatureVector& q);

FeatureVector centroid(const InstanceMemory& mem, int cluster);

}  // namespace cc
