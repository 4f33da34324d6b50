#include <doctest.h>

#include <vector>

#include "cc/datagen.hpp"
#include "cc/trainer.hpp"

using namespace cc;

namespace {

Dataset separable_dataset(std::uint64_t seed = 21) {
  GenParams p;
  p.n_ids = 8;
  p.per_id = 10;
  p.d_in = 16;
  p.noise_sigma = 0.02;
  p.n_cameras = 2;
  p.seed = seed;
  return generate(p);
}

TrainConfig small_config() {
  TrainConfig cfg;
  cfg.loss.tau = 0.05;
  cfg.momentum = 0.1;
  cfg.dbscan = {0.3, 4};
  cfg.sampler.p = 4;
  cfg.sampler.z = 4;
  cfg.schedule = {0.01, 2, 6, 0.1, 12};
  cfg.epochs = 12;
  cfg.seed = 3;
  cfg.d_embed = 32;
  return cfg;
}

}  // namespace

TEST_CASE("train: zero epochs returns the initialized encoder") {
  const auto dataset = separable_dataset();
  auto cfg = small_config();
  cfg.epochs = 0;
  const auto result = train(training_view(dataset), cfg);
  CHECK(result.reports.empty());

  Rng rng(cfg.seed);
  const auto expected = init_encoder(cfg.d_embed, dataset.d_in, rng);
  CHECK(result.encoder.weights == expected.weights);
  CHECK(result.encoder.bias == expected.bias);
}

TEST_CASE("train: identical config and seed give bit-identical results") {
  const auto dataset = separable_dataset();
  auto cfg = small_config();
  cfg.epochs = 4;
  const auto a = train(training_view(dataset), cfg);
  const auto b = train(training_view(dataset), cfg);
  CHECK(a.encoder.weights == b.encoder.weights);
  CHECK(a.encoder.bias == b.encoder.bias);
  CHECK(a.rng_state == b.rng_state);
  REQUIRE(a.reports.size() == b.reports.size());
  for (std::size_t e = 0; e < a.reports.size(); ++e) {
    CHECK(a.reports[e].mean_loss == b.reports[e].mean_loss);
    CHECK(a.reports[e].k == b.reports[e].k);
  }
}

TEST_CASE("train: per-iteration event order is loss, memory, optimizer") {
  const auto dataset = separable_dataset();
  auto cfg = small_config();
  cfg.epochs = 2;

  std::vector<TrainEvent> events;
  TrainHooks hooks;
  hooks.on_event = [&](int, int, TrainEvent ev) { events.push_back(ev); };
  train(training_view(dataset), cfg, hooks);

  REQUIRE(!events.empty());
  REQUIRE(events.size() % 3 == 0);
  for (std::size_t i = 0; i < events.size(); i += 3) {
    CHECK(events[i] == TrainEvent::loss_computed);
    CHECK(events[i + 1] == TrainEvent::memory_updated);
    CHECK(events[i + 2] == TrainEvent::optimizer_step);
  }
}

TEST_CASE("train: separable fixture reaches pure clusters and lower loss") {
  const auto dataset = separable_dataset();
  const auto cfg = small_config();

  TrainHooks hooks;
  hooks.mean_purity = [&](const PseudoLabeling& lab) {
    return mean_cluster_purity(lab, dataset);
  };
  const auto result = train(training_view(dataset), cfg, hooks);
  REQUIRE(result.reports.size() == 12);
  CHECK(result.reports.back().mean_purity == doctest::Approx(1.0));
  CHECK(result.reports[10].mean_loss < result.reports[1].mean_loss);
}

TEST_CASE("train: instance baseline equals cluster variant on singletons") {
  // tiny eps + min_pts 1 force all-singleton clusters, where the two memory
  // granularities coincide
  const auto dataset = separable_dataset();
  auto cfg = small_config();
  cfg.epochs = 3;
  cfg.dbscan = {1e-9, 1};
  cfg.sampler.p = 8;
  cfg.sampler.z = 2;

  auto baseline_cfg = cfg;
  baseline_cfg.variant = Variant::instance_baseline;

  const auto a = train(training_view(dataset), cfg);
  const auto b = train(training_view(dataset), baseline_cfg);
  // the instance path re-normalizes already-unit vectors in centroid(), so
  // agreement is to rounding, not bitwise
  REQUIRE(a.reports.size() == b.reports.size());
  for (std::size_t e = 0; e < a.reports.size(); ++e) {
    CHECK(a.reports[e].mean_loss ==
          doctest::Approx(b.reports[e].mean_loss).epsilon(1e-12));
  }
  REQUIRE(a.encoder.weights.size() == b.encoder.weights.size());
  for (std::size_t i = 0; i < a.encoder.weights.size(); ++i) {
    CHECK(a.encoder.weights[i] ==
          doctest::Approx(b.encoder.weights[i]).epsilon(1e-10));
  }
}

TEST_CASE("train: aborts when clustering collapses below P") {
  const auto dataset = separable_dataset();
  auto cfg = small_config();
  cfg.sampler.p = 64;  // more identities than any clustering can deliver
  CHECK_THROWS_AS(train(training_view(dataset), cfg), TooFewClusters);
}

TEST_CASE("train: outliers are excluded from training") {
  const auto dataset = separable_dataset();
  auto cfg = small_config();
  cfg.epochs = 1;
  cfg.dbscan.min_pts = 9;  // borderline: some points drop out as noise

  const auto result = train(training_view(dataset), cfg);
  // report bookkeeping is consistent
  CHECK(result.reports[0].outlier_count >= 0);
  CHECK(result.reports[0].k >= cfg.sampler.p);
}
