#include <doctest.h>

#include <cmath>

#include "cc/memory.hpp"

using namespace cc;

namespace {

PseudoLabeling singleton_labeling(int n) {
  PseudoLabeling lab;
  lab.k = n;
  for (int i = 0; i < n; ++i) lab.labels.push_back(i);
  return lab;
}

std::vector<FeatureVector> random_unit_features(Rng& rng, int n, int dim) {
  std::vector<FeatureVector> feats;
  for (int i = 0; i < n; ++i) {
    Vec v(dim);
    for (auto& x : v) x = rng.normal();
    feats.push_back(l2_normalize(v));
  }
  return feats;
}

}  // namespace

TEST_CASE("init_cluster_memory: normalized member means") {
  std::vector<FeatureVector> feats = {
      {{1, 0}}, {{0, 1}},  // cluster 0
      {{0.6, 0.8}},        // cluster 1
      {{1, 0}}, {{0.6, 0.8}},  // cluster 2
  };
  PseudoLabeling lab;
  lab.k = 3;
  lab.labels = {0, 0, 1, 2, 2};
  const auto mem = init_cluster_memory(feats, lab, 0.1);
  CHECK(mem.reps[0].values[0] == doctest::Approx(0.70710678));
  CHECK(mem.reps[0].values[1] == doctest::Approx(0.70710678));
  CHECK(mem.reps[1].values[0] == doctest::Approx(0.6));
  CHECK(mem.reps[1].values[1] == doctest::Approx(0.8));
  CHECK(mem.reps[2].values[0] == doctest::Approx(0.89442719));
  CHECK(mem.reps[2].values[1] == doctest::Approx(0.44721360));
}

TEST_CASE("momentum_update: degenerate and hand-computed cases") {
  ClusterMemory mem;
  mem.reps = {FeatureVector{{1, 0}}};
  const FeatureVector q{{0, 1}};

  SUBCASE("m=1 leaves the rep unchanged") {
    mem.momentum = 1.0;
    momentum_update(mem, q, 0);
    CHECK(mem.reps[0].values[0] == doctest::Approx(1.0));
    CHECK(mem.reps[0].values[1] == doctest::Approx(0.0));
  }
  SUBCASE("m=0 replaces the rep") {
    mem.momentum = 0.0;
    momentum_update(mem, q, 0);
    CHECK(mem.reps[0].values[0] == doctest::Approx(0.0));
    CHECK(mem.reps[0].values[1] == doctest::Approx(1.0));
  }
  SUBCASE("m=0.1 blends then normalizes") {
    mem.momentum = 0.1;
    momentum_update(mem, q, 0);
    CHECK(mem.reps[0].values[0] == doctest::Approx(0.11043153));
    CHECK(mem.reps[0].values[1] == doctest::Approx(0.99388373));
  }
  SUBCASE("out-of-range cluster id") {
    CHECK_THROWS_AS(momentum_update(mem, q, 1), std::out_of_range);
  }
}

TEST_CASE("batch_update: sequential within a cluster, empty batch is a no-op") {
  ClusterMemory mem;
  mem.reps = {FeatureVector{{1, 0}}};
  mem.momentum = 0.5;

  SUBCASE("empty batch") {
    const auto before = mem.reps;
    batch_update(mem, {});
    CHECK(mem.reps == before);
  }
  SUBCASE("two queries, later sees earlier") {
    batch_update(mem, {{FeatureVector{{0, 1}}, 0}, {FeatureVector{{1, 0}}, 0}});
    CHECK(mem.reps[0].values[0] == doctest::Approx(0.92387953));
    CHECK(mem.reps[0].values[1] == doctest::Approx(0.38268343));
  }
  SUBCASE("updates to distinct clusters commute") {
    ClusterMemory a;
    a.reps = {FeatureVector{{1, 0}}, FeatureVector{{0, 1}}};
    a.momentum = 0.5;
    ClusterMemory b = a;
    const FeatureVector q0{{0.6, 0.8}}, q1{{0.8, 0.6}};
    batch_update(a, {{q0, 0}, {q1, 1}});
    batch_update(b, {{q1, 1}, {q0, 0}});
    CHECK(a.reps == b.reps);
  }
}

TEST_CASE("instance memory: init stores clustered features verbatim") {
  std::vector<FeatureVector> feats = {
      {{1, 0}}, {{0, 1}}, {{0.6, 0.8}}, {{0.8, 0.6}}};
  PseudoLabeling lab;
  lab.k = 2;
  lab.labels = {0, 0, 1, PseudoLabeling::kOutlier};
  const auto mem = init_instance_memory(feats, lab, 0.1);
  CHECK(mem.feats.size() == 3);
  CHECK(mem.owner_cluster.size() == 3);
  CHECK(mem.owner_cluster.at(0) == 0);
  CHECK(mem.owner_cluster.at(1) == 0);
  CHECK(mem.owner_cluster.at(2) == 1);
  CHECK(mem.slot_of.count(3) == 0);
  CHECK(mem.feats[2] == feats[2]);
}

TEST_CASE("instance_update: momentum form") {
  std::vector<FeatureVector> feats = {{{1, 0}}};
  auto lab = singleton_labeling(1);
  auto mem = init_instance_memory(feats, lab, 0.5);
  instance_update(mem, 0, FeatureVector{{0, 1}});
  CHECK(mem.feats[0].values[0] == doctest::Approx(0.70710678));
  CHECK(mem.feats[0].values[1] == doctest::Approx(0.70710678));

  mem.momentum = 0.0;
  instance_update(mem, 0, FeatureVector{{1, 0}});
  CHECK(mem.feats[0].values[0] == doctest::Approx(1.0));

  mem.momentum = 1.0;
  instance_update(mem, 0, FeatureVector{{0, 1}});
  CHECK(mem.feats[0].values[0] == doctest::Approx(1.0));
}

TEST_CASE("centroid: normalized mean of the live bank") {
  std::vector<FeatureVector> feats = {{{1, 0}}, {{0, 1}}, {{0.6, 0.8}}};
  PseudoLabeling lab;
  lab.k = 2;
  lab.labels = {0, 0, 1};
  const auto mem = init_instance_memory(feats, lab, 0.1);
  const auto c0 = centroid(mem, 0);
  CHECK(c0.values[0] == doctest::Approx(0.70710678));
  const auto c1 = centroid(mem, 1);
  CHECK(c1.values[0] == doctest::Approx(0.6));
  CHECK(c1.values[1] == doctest::Approx(0.8));
}

TEST_CASE("property: reps keep unit norm under any update sequence") {
  Rng rng(42);
  const auto feats = random_unit_features(rng, 12, 6);
  PseudoLabeling lab;
  lab.k = 3;
  for (int i = 0; i < 12; ++i) lab.labels.push_back(i % 3);
  auto mem = init_cluster_memory(feats, lab, 0.3);
  for (int step = 0; step < 200; ++step) {
    Vec v(6);
    for (auto& x : v) x = rng.normal();
    momentum_update(mem, l2_normalize(v),
                    static_cast<int>(rng.uniform_index(3)));
  }
  for (const auto& rep : mem.reps) {
    CHECK(std::abs(dot(rep, rep) - 1.0) <= 1e-9);
  }
}

TEST_CASE("property: m=0.1 moves the rep strictly toward q") {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto feats = random_unit_features(rng, 2, 6);
    ClusterMemory mem;
    mem.reps = {feats[0]};
    mem.momentum = 0.1;
    const FeatureVector& q = feats[1];
    const double before = dot(mem.reps[0], q);
    momentum_update(mem, q, 0);
    CHECK(dot(mem.reps[0], q) > before);
  }
}

TEST_CASE("property: larger m gives smaller per-step displacement") {
  Rng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const auto feats = random_unit_features(rng, 2, 6);
    const FeatureVector& q = feats[1];
    double prev_disp = 1e300;
    for (double m : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      ClusterMemory mem;
      mem.reps = {feats[0]};
      mem.momentum = m;
      momentum_update(mem, q, 0);
      double disp = 0.0;
      for (std::size_t d = 0; d < q.dim(); ++d) {
        const double diff = mem.reps[0].values[d] - feats[0].values[d];
        disp += diff * diff;
      }
      disp = std::sqrt(disp);
      CHECK(disp <= prev_disp + 1e-12);
      prev_disp = disp;
    }
  }
}

TEST_CASE("property: singleton clusters make both memories coincide") {
  Rng rng(45);
  const int n = 8;
  const auto feats = random_unit_features(rng, n, 6);
  const auto lab = singleton_labeling(n);

  auto cmem = init_cluster_memory(feats, lab, 0.3);
  auto imem = init_instance_memory(feats, lab, 0.3);

  std::vector<std::pair<FeatureVector, int>> batch;
  for (int step = 0; step < 40; ++step) {
    Vec v(6);
    for (auto& x : v) x = rng.normal();
    batch.emplace_back(l2_normalize(v), static_cast<int>(rng.uniform_index(n)));
  }
  batch_update(cmem, batch);
  for (const auto& [q, c] : batch) instance_update(imem, c, q);

  for (int c = 0; c < n; ++c) {
    const auto cent = centroid(imem, c);
    for (std::size_t d = 0; d < cent.dim(); ++d) {
      CHECK(cmem.reps[c].values[d] == doctest::Approx(cent.values[d]).epsilon(1e-12));
    }
  }
}
