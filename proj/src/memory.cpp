#include "cc/memory.hpp"

#include <string>

namespace cc {

namespace {

FeatureVector normalized_mean(const std::vector<FeatureVector>& features,
                              const std::vector<int>& ids) {
  Vec sum(features[ids.front()].dim(), 0.0);
  for (int id : ids) {
    const auto& v = features[id].values;
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += v[d];
  }
  for (auto& x : sum) x /= static_cast<double>(ids.size());
  return l2_normalize(sum);
}

void momentum_blend(FeatureVector& rep, const FeatureVector& q, double m) {
  Vec blended(rep.dim());
  for (std::size_t d = 0; d < blended.size(); ++d) {
    blended[d] = m * rep.values[d] + (1.0 - m) * q.values[d];
  }
  rep = l2_normalize(blended);
}

}  // namespace

ClusterMemory init_cluster_memory(const std::vector<FeatureVector>& features,
                                  const PseudoLabeling& labeling, double m) {
  ClusterMemory mem;
  mem.momentum = m;
  mem.reps.reserve(labeling.k);
  for (const auto& member_ids : labeling.members()) {
    mem.reps.push_back(normalized_mean(features, member_ids));
  }
  return mem;
}

void momentum_update(ClusterMemory& mem, const FeatureVector& q, int cluster) {
  if (cluster < 0 || cluster >= mem.k()) {
    throw std::out_of_range("momentum_update: cluster " +
                            std::to_string(cluster) + " out of range, K=" +
                            std::to_string(mem.k()));
  }
  momentum_blend(mem.reps[cluster], q, mem.momentum);
}

void batch_update(ClusterMemory& mem,
                  const std::vector<std::pair<FeatureVector, int>>& batch) {
  for (const auto& [q, cluster] : batch) momentum_update(mem, q, cluster);
}

InstanceMemory init_instance_memory(const std::vector<FeatureVector>& features,
                                    const PseudoLabeling& labeling, double m) {
  InstanceMemory mem;
  mem.momentum = m;
  mem.k = labeling.k;
  mem.members.resize(labeling.k);
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    const int c = labeling.labels[i];
    if (c == PseudoLabeling::kOutlier) continue;
    const int slot = static_cast<int>(mem.feats.size());
    mem.feats.push_back(features[i]);
    mem.instance_ids.push_back(static_cast<int>(i));
    mem.slot_of[static_cast<int>(i)] = slot;
    mem.owner_cluster[static_cast<int>(i)] = c;
    mem.members[c].push_back(slot);
  }
  return mem;
}

void instance_update(InstanceMemory& mem, int instance_id,
                     const FeatureVector& q) {
  const auto it = mem.slot_of.find(instance_id);
  if (it == mem.slot_of.end()) {
    throw std::out_of_range("instance_update: instance " +
                            std::to_string(instance_id) + " not in memory");
  }
  momentum_blend(mem.feats[it->second], q, mem.momentum);
}

FeatureVector centroid(const InstanceMemory& mem, int cluster) {
  if (cluster < 0 || cluster >= mem.k) {
    throw std::out_of_range("centroid: cluster " + std::to_string(cluster) +
                            " out of range, K=" + std::to_string(mem.k));
  }
  const auto& slots = mem.members[cluster];
  Vec sum(mem.feats[slots.front()].dim(), 0.0);
  for (int slot : slots) {
    const auto& v = mem.feats[slot].values;
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += v[d];
  }
  for (auto& x : sum) x /= static_cast<double>(slots.size());
  return l2_normalize(sum);
}

}  // namespace cc
