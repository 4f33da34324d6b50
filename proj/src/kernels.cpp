#include "cc/kernels.hpp"

#include "cc/parallel.hpp"

namespace cc::kernels {

static std::vector<int> neighbors_of(const std::vector<FeatureVector>& features,
                                     std::size_t i, double eps) {
  std::vector<int> out;
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (cosine_distance(features[i], features[j]) <= eps) {
      out.push_back(static_cast<int>(j));
    }
  }
  return out;
}

std::vector<std::vector<int>> neighbor_lists(
    const std::vector<FeatureVector>& features, double eps) {
  const int n = static_cast<int>(features.size());
  std::vector<std::vector<int>> lists(n);
#pragma omp parallel for schedule(dynamic, 16) \
    num_threads(cc::parallel::thread_count())
  for (int i = 0; i < n; ++i) {
    lists[i] = neighbors_of(features, i, eps);
  }
  return lists;
}

std::vector<std::vector<int>> neighbor_lists_serial(
    const std::vector<FeatureVector>& features, double eps) {
  std::vector<std::vector<int>> lists(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    lists[i] = neighbors_of(features, i, eps);
  }
  return lists;
}

std::vector<FeatureVector> extract_features(
    const Encoder& enc, const std::vector<const Vec*>& raws) {
  const int n = static_cast<int>(raws.size());
  std::vector<FeatureVector> feats(n);
#pragma omp parallel for schedule(static) \
    num_threads(cc::parallel::thread_count())
  for (int i = 0; i < n; ++i) {
    feats[i] = forward(enc, *raws[i]);
  }
  return feats;
}

std::vector<FeatureVector> extract_features_serial(
    const Encoder& enc, const std::vector<const Vec*>& raws) {
  std::vector<FeatureVector> feats(raws.size());
  for (std::size_t i = 0; i < raws.size(); ++i) {
    feats[i] = forward(enc, *raws[i]);
  }
  return feats;
}

std::vector<std::vector<double>> similarity_rows(
    const std::vector<FeatureVector>& queries,
    const std::vector<FeatureVector>& gallery) {
  const int n = static_cast<int>(queries.size());
  std::vector<std::vector<double>> rows(n);
#pragma omp parallel for schedule(static) \
    num_threads(cc::parallel::thread_count())
  for (int i = 0; i < n; ++i) {
    rows[i].resize(gallery.size());
    for (std::size_t j = 0; j < gallery.size(); ++j) {
      rows[i][j] = dot(queries[i], gallery[j]);
    }
  }
  return rows;
}

std::vector<std::vector<double>> similarity_rows_serial(
    const std::vector<FeatureVector>& queries,
    const std::vector<FeatureVector>& gallery) {
  std::vector<std::vector<double>> rows(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    rows[i].resize(gallery.size());
    for (std::size_t j = 0; j < gallery.size(); ++j) {
      rows[i][j] = dot(queries[i], gallery[j]);
    }
  }
  return rows;
}

}  // namespace cc::kernels
