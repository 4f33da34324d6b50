// Times the OpenMP kernels against their serial twins and checks that both
// produce identical output.

#include <chrono>
#include <cstdio>
#include <functional>

#include "cc/clustering.hpp"
#include "cc/datagen.hpp"
#include "cc/eval.hpp"
#include "cc/kernels.hpp"
#include "cc/parallel.hpp"
#include "cc/trainer.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    if (ms < best) best = ms;
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool same) {
  std::printf("%-22s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              same ? "outputs identical" : "OUTPUT MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", cc::parallel::thread_count());

  cc::GenParams params;
  params.n_ids = 64;
  params.per_id = 40;
  params.d_in = 64;
  params.noise_sigma = 0.05;
  params.seed = 42;
  const cc::Dataset dataset = cc::generate(params);

  cc::Rng rng(1);
  const cc::Encoder enc = cc::init_encoder(96, params.d_in, rng);
  std::vector<const cc::Vec*> raws;
  for (const auto& inst : dataset.instances) raws.push_back(&inst.raw);

  std::vector<cc::FeatureVector> feats_s, feats_p;
  report("extract_features",
         time_ms([&] { feats_s = cc::kernels::extract_features_serial(enc, raws); }),
         time_ms([&] { feats_p = cc::kernels::extract_features(enc, raws); }),
         feats_s == feats_p);

  std::vector<std::vector<int>> nb_s, nb_p;
  report("neighbor_lists",
         time_ms([&] { nb_s = cc::kernels::neighbor_lists_serial(feats_s, 0.3); }),
         time_ms([&] { nb_p = cc::kernels::neighbor_lists(feats_p, 0.3); }),
         nb_s == nb_p);

  cc::DbscanParams db{0.3, 4};
  cc::PseudoLabeling lab_s, lab_p;
  report("dbscan",
         time_ms([&] { lab_s = cc::dbscan_serial(feats_s, db); }),
         time_ms([&] { lab_p = cc::dbscan(feats_p, db); }),
         lab_s.labels == lab_p.labels && lab_s.k == lab_p.k);

  cc::Rng split_rng(7);
  const cc::RetrievalSplit split = cc::make_split(dataset, 0.3, split_rng);
  cc::EvalReport ev_s, ev_p;
  report("evaluate",
         time_ms([&] { ev_s = cc::evaluate_serial(enc, dataset, split); }),
         time_ms([&] { ev_p = cc::evaluate(enc, dataset, split); }),
         ev_s.map == ev_p.map && ev_s.cmc == ev_p.cmc);

  std::printf("dbscan: K=%d outliers=%d   evaluate: mAP=%.4f\n", lab_p.k,
              lab_p.outlier_count(), ev_p.map);
  return 0;
}
