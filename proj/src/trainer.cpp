#include "cc/trainer.hpp"

#include <string>

#include "cc/kernels.hpp"
#include "cc/parallel.hpp"

namespace cc {

TrainView training_view(const Dataset& dataset) {
  validate_dataset(dataset);
  TrainView view;
  view.d_in = dataset.d_in;
  view.raws.reserve(dataset.size());
  for (const auto& inst : dataset.instances) view.raws.push_back(&inst.raw);
  return view;
}

namespace {

struct QueryWork {
  FeatureVector q;
  double loss = 0.0;
  Vec grad_y;  // gradient at the pre-normalization layer
};

void emit(const TrainHooks& hooks, int epoch, int iteration, TrainEvent ev) {
  if (hooks.on_event) hooks.on_event(epoch, iteration, ev);
}

}  // namespace

TrainResult train(const TrainView& view, const TrainConfig& cfg,
                  const TrainHooks& hooks) {
  if (view.raws.empty()) throw EmptyInput("train: empty dataset view");
  if (cfg.epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");

  Rng rng(cfg.seed);
  TrainResult result;
  result.encoder = init_encoder(cfg.d_embed, view.d_in, rng);
  AdamState adam = AdamState::init(cfg.d_embed, view.d_in, cfg.weight_decay);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto features = kernels::extract_features(result.encoder, view.raws);

    PseudoLabeling labeling = dbscan(features, cfg.dbscan);
    if (labeling.k == 0) {
      throw NoClusters("train: epoch " + std::to_string(epoch) +
                       ": DBSCAN produced no clusters");
    }
    if (cfg.sampler.cluster_cap) {
      labeling = cap_clusters(labeling, *cfg.sampler.cluster_cap, rng);
    }
    if (labeling.k < cfg.sampler.p) {
      throw TooFewClusters("train: epoch " + std::to_string(epoch) + ": K=" +
                           std::to_string(labeling.k) + " < P=" +
                           std::to_string(cfg.sampler.p));
    }

    ClusterMemory cluster_mem;
    InstanceMemory instance_mem;
    if (cfg.variant == Variant::cluster_contrast) {
      cluster_mem = init_cluster_memory(features, labeling, cfg.momentum);
    } else {
      instance_mem = init_instance_memory(features, labeling, cfg.momentum);
    }

    const double lr = lr_at(cfg.schedule, epoch);
    const int iterations = default_iterations(labeling, cfg.sampler);
    double loss_sum = 0.0;
    long query_count = 0;

    for (int it = 0; it < iterations; ++it) {
      const Batch batch = sample_batch(labeling, cfg.sampler, rng);
      const int bn = static_cast<int>(batch.size());

      // loss reads the memory as of the start of the iteration
      std::vector<FeatureVector> reps;
      if (cfg.variant == Variant::cluster_contrast) {
        reps = cluster_mem.reps;
      } else {
        reps.reserve(instance_mem.k);
        for (int c = 0; c < instance_mem.k; ++c) {
          reps.push_back(centroid(instance_mem, c));
        }
      }

      std::vector<QueryWork> work(bn);
#pragma omp parallel for schedule(static) \
    num_threads(cc::parallel::thread_count())
      for (int i = 0; i < bn; ++i) {
        const Vec& raw = *view.raws[batch[i].instance_id];
        work[i].q = forward(result.encoder, raw);
        const LossResult lr_res =
            nce_against(work[i].q, reps, batch[i].cluster_id, cfg.loss.tau);
        work[i].loss = lr_res.value;
        work[i].grad_y =
            backward_pre_normalization(result.encoder, raw, lr_res.grad_q);
      }
      emit(hooks, epoch, it, TrainEvent::loss_computed);

      // memory moves before the optimizer, with this iteration's features
      for (int i = 0; i < bn; ++i) {
        if (cfg.variant == Variant::cluster_contrast) {
          momentum_update(cluster_mem, work[i].q, batch[i].cluster_id);
        } else {
          instance_update(instance_mem, batch[i].instance_id, work[i].q);
        }
      }
      emit(hooks, epoch, it, TrainEvent::memory_updated);

      // ordered reduction keeps the sum bit-deterministic
      EncoderGrad grad = EncoderGrad::zeros(cfg.d_embed, view.d_in);
      for (int i = 0; i < bn; ++i) {
        const Vec& raw = *view.raws[batch[i].instance_id];
        for (int r = 0; r < cfg.d_embed; ++r) {
          const double gy = work[i].grad_y[r];
          double* row = &grad.weights[static_cast<std::size_t>(r) * view.d_in];
          for (int c = 0; c < view.d_in; ++c) row[c] += gy * raw[c];
          grad.bias[r] += gy;
        }
        loss_sum += work[i].loss;
      }
      grad.scale(1.0 / bn);
      adam_step(result.encoder, grad, adam, lr);
      emit(hooks, epoch, it, TrainEvent::optimizer_step);

      query_count += bn;
    }

    EpochReport report;
    report.epoch = epoch;
    report.k = labeling.k;
    report.outlier_count = labeling.outlier_count();
    report.mean_loss = query_count > 0 ? loss_sum / query_count : 0.0;
    report.lr = lr;
    if (hooks.mean_purity) report.mean_purity = hooks.mean_purity(labeling);
    result.reports.push_back(report);
  }

  result.rng_state = rng.save_state();
  return result;
}

}  // namespace cc
