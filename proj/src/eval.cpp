#include "cc/eval.hpp"

#include <algorithm>
#include <numeric>

#include "cc/kernels.hpp"
#include "cc/parallel.hpp"

namespace cc {

namespace {

struct QueryOutcome {
  bool skipped = true;
  double ap = 0.0;
  int first_hit_rank = 0;  // 1-based
};

QueryOutcome score_query(const Instance& q, const Dataset& dataset,
                         const std::vector<int>& gallery,
                         const std::vector<double>& sims,
                         const EvalOptions& opts) {
  // keep: gallery positions surviving the junk rule
  std::vector<int> keep;
  keep.reserve(gallery.size());
  for (std::size_t g = 0; g < gallery.size(); ++g) {
    const auto& truth = dataset.instances[gallery[g]].truth;
    if (opts.junk_rule && truth.identity == q.truth.identity &&
        truth.camera == q.truth.camera) {
      continue;
    }
    keep.push_back(static_cast<int>(g));
  }
  std::stable_sort(keep.begin(), keep.end(), [&](int a, int b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    return gallery[a] < gallery[b];
  });

  QueryOutcome out;
  int hits = 0;
  double precision_sum = 0.0;
  for (std::size_t rank = 0; rank < keep.size(); ++rank) {
    const auto& truth = dataset.instances[gallery[keep[rank]]].truth;
    if (truth.identity != q.truth.identity) continue;
    ++hits;
    precision_sum += static_cast<double>(hits) / (rank + 1);
    if (hits == 1) out.first_hit_rank = static_cast<int>(rank + 1);
  }
  if (hits == 0) return out;
  out.skipped = false;
  out.ap = precision_sum / hits;
  return out;
}

EvalReport evaluate_impl(const Encoder& enc, const Dataset& dataset,
                         const RetrievalSplit& split, const EvalOptions& opts,
                         bool parallel) {
  validate_dataset(dataset);
  if (split.query.empty() || split.gallery.empty()) {
    throw EmptyInput("evaluate: empty query or gallery");
  }

  std::vector<const Vec*> q_raws, g_raws;
  for (int id : split.query) q_raws.push_back(&dataset.instances[id].raw);
  for (int id : split.gallery) g_raws.push_back(&dataset.instances[id].raw);
  const auto q_feats = parallel ? kernels::extract_features(enc, q_raws)
                                : kernels::extract_features_serial(enc, q_raws);
  const auto g_feats = parallel ? kernels::extract_features(enc, g_raws)
                                : kernels::extract_features_serial(enc, g_raws);
  const auto sims = parallel ? kernels::similarity_rows(q_feats, g_feats)
                             : kernels::similarity_rows_serial(q_feats, g_feats);

  const int nq = static_cast<int>(split.query.size());
  std::vector<QueryOutcome> outcomes(nq);
  if (parallel) {
#pragma omp parallel for schedule(static) \
    num_threads(cc::parallel::thread_count())
    for (int i = 0; i < nq; ++i) {
      outcomes[i] = score_query(dataset.instances[split.query[i]], dataset,
                                split.gallery, sims[i], opts);
    }
  } else {
    for (int i = 0; i < nq; ++i) {
      outcomes[i] = score_query(dataset.instances[split.query[i]], dataset,
                                split.gallery, sims[i], opts);
    }
  }

  EvalReport report;
  report.cmc.assign(opts.max_rank, 0.0);
  int counted = 0;
  for (const auto& out : outcomes) {
    if (out.skipped) {
      ++report.skipped_queries;
      continue;
    }
    ++counted;
    report.map += out.ap;
    for (int r = out.first_hit_rank; r <= opts.max_rank; ++r) {
      report.cmc[r - 1] += 1.0;
    }
  }
  if (counted == 0) {
    throw NoCrossCameraRelevants(
        "evaluate: every query lost all relevant gallery items");
  }
  report.map /= counted;
  for (auto& c : report.cmc) c /= counted;

  const auto [intra, inter] = class_distance_stats(enc, dataset);
  report.intra_mean = intra;
  report.inter_mean = inter;
  return report;
}

}  // namespace

EvalReport evaluate(const Encoder& enc, const Dataset& dataset,
                    const RetrievalSplit& split, const EvalOptions& opts) {
  return evaluate_impl(enc, dataset, split, opts, /*parallel=*/true);
}

EvalReport evaluate_serial(const Encoder& enc, const Dataset& dataset,
                           const RetrievalSplit& split,
                           const EvalOptions& opts) {
  return evaluate_impl(enc, dataset, split, opts, /*parallel=*/false);
}

std::pair<double, double> class_distance_stats(const Encoder& enc,
                                               const Dataset& dataset,
                                               std::size_t pair_threshold) {
  validate_dataset(dataset);
  std::vector<const Vec*> raws;
  for (const auto& inst : dataset.instances) raws.push_back(&inst.raw);
  const auto feats = kernels::extract_features(enc, raws);

  const std::size_t n = feats.size();
  double intra_sum = 0.0, inter_sum = 0.0;
  long intra_n = 0, inter_n = 0;
  auto account = [&](std::size_t i, std::size_t j) {
    const double d = cosine_distance(feats[i], feats[j]);
    if (dataset.instances[i].truth.identity ==
        dataset.instances[j].truth.identity) {
      intra_sum += d;
      ++intra_n;
    } else {
      inter_sum += d;
      ++inter_n;
    }
  };

  if (n <= pair_threshold) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) account(i, j);
    }
  } else {
    Rng rng(0x5eedULL);  // fixed seed: sampled stats stay reproducible
    const long samples = 200000;
    for (long s = 0; s < samples; ++s) {
      const std::size_t i = rng.uniform_index(n);
      std::size_t j = rng.uniform_index(n - 1);
      if (j >= i) ++j;
      account(i, j);
    }
  }
  return {intra_n > 0 ? intra_sum / intra_n : 0.0,
          inter_n > 0 ? inter_sum / inter_n : 0.0};
}

}  // namespace cc
