#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cc/clustering.hpp"
#include "cc/core.hpp"
#include "cc/encoder.hpp"
#include "cc/loss.hpp"
#include "cc/memory.hpp"
#include "cc/sampler.hpp"

namespace cc {

enum class Variant { cluster_contrast, instance_baseline };

struct TrainConfig {
  LossConfig loss;
  double momentum = 0.1;
  DbscanParams dbscan;
  SamplerConfig sampler;
  LrSchedule schedule;
  int epochs = 50;
  std::uint64_t seed = 1;
  Variant variant = Variant::cluster_contrast;
  double weight_decay = 5e-4;
  int d_embed = 64;
};

struct EpochReport {
  int epoch = 0;
  int k = 0;
  int outlier_count = 0;
  double mean_loss = 0.0;
  double lr = 0.0;
  double mean_purity = -1.0;  // -1 when no purity hook is installed
};

/// Label-free view of a dataset: the only thing training may see.
struct TrainView {
  int d_in = 0;
  std::vector<const Vec*> raws;  // indexed by instance id
};

TrainView training_view(const Dataset& dataset);

enum class TrainEvent { loss_computed, memory_updated, optimizer_step };

struct TrainHooks {
  // diagnostic only; wired from label-holding code outside the trainer
  std::function<double(const PseudoLabeling&)> mean_purity;
  std::function<void(int epoch, int iteration, TrainEvent)> on_event;
};

struct TrainResult {
  Encoder encoder;
  std::vector<EpochReport> reports;
  std::string rng_state;  // final state, for the checkpoint
};

// Per epoch: extract features, cluster (DBSCAN, optional cap), init the
// variant's memory, then iterate sample / loss / memory update / Adam step.
// Aborts with TooFewClusters or NoClusters when clustering collapses.
TrainResult train(const TrainView& view, const TrainConfig& cfg,
                  const TrainHooks& hooks = {});

}  // namespace cc
