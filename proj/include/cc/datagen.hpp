#pragma once

#include <string>

#include "cc/core.hpp"
#include "cc/eval.hpp"

namespace cc {

struct GenParams {
  int n_ids = 32;
  int per_id = 20;
  int d_in = 32;
  double noise_sigma = 0.05;
  int n_cameras = 4;
  double camera_shift_sigma = 0.0;
  std::uint64_t seed = 1;
};

// Identity prototypes drawn uniformly on the unit sphere (redrawn while any
// pair has cosine similarity > 0.95), per-camera fixed offsets, isotropic
// per-instance noise, cameras assigned round-robin within each identity.
Dataset generate(const GenParams& params);

// TSV: id<TAB>identity<TAB>camera<TAB>f0..f{d_in-1}, floats with 17
// significant digits; load(save(d)) reproduces d exactly.
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

// Per identity, ceil(query_fraction * per-id count) instances go to query,
// the rest to gallery. With junk_rule, errors when some query would keep no
// cross-camera relevant gallery item.
RetrievalSplit make_split(const Dataset& dataset, double query_fraction,
                          Rng& rng, bool junk_rule = true);

}  // namespace cc
