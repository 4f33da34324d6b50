#pragma once

#include <vector>

#include "cc/core.hpp"
#include "cc/encoder.hpp"

// Data-parallel inner loops with serial twins. The OpenMP versions write to
// disjoint per-index slots, so their output is bit-identical to the serial
// ones for any thread count.
namespace cc::kernels {

// Closed-ball eps-neighborhoods under cosine distance, self included,
// ascending index order within each list.
std::vector<std::vector<int>> neighbor_lists(
    const std::vector<FeatureVector>& features, double eps);
std::vector<std::vector<int>> neighbor_lists_serial(
    const std::vector<FeatureVector>& features, double eps);

std::vector<FeatureVector> extract_features(const Encoder& enc,
                                            const std::vector<const Vec*>& raws);
std::vector<FeatureVector> extract_features_serial(
    const Encoder& enc, const std::vector<const Vec*>& raws);

// Full cosine similarity rows of queries against gallery, one row per query.
std::vector<std::vector<double>> similarity_rows(
    const std::vector<FeatureVector>& queries,
    const std::vector<FeatureVector>& gallery);
std::vector<std::vector<double>> similarity_rows_serial(
    const std::vector<FeatureVector>& queries,
    const std::vector<FeatureVector>& gallery);

}  // namespace cc::kernels
