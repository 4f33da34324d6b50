#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cc {

using Vec = std::vector<double>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateVector : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoClusters : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooFewClusters : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoCrossCameraRelevants : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unit-norm embedding. Produced by l2_normalize(); code that builds one by
/// hand is responsible for the norm.
struct FeatureVector {
  Vec values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const FeatureVector&) const = default;
};

double dot(const Vec& a, const Vec& b);
double dot(const FeatureVector& a, const FeatureVector& b);
double norm(const Vec& v);

// Throws DegenerateVector on the zero vector.
FeatureVector l2_normalize(const Vec& v);

/// Cosine distance 1 - a.b for unit vectors.
inline double cosine_distance(const FeatureVector& a, const FeatureVector& b) {
  return 1.0 - dot(a, b);
}

struct GroundTruth {
  int identity = -1;
  int camera = -1;
};

struct Instance {
  int id = 0;
  Vec raw;
  GroundTruth truth;  // only eval and datagen may look at this
};

struct DatasetMeta {
  std::uint64_t seed = 0;
  std::string generator_params;  // JSON echo of GenParams, empty if unknown
};

struct Dataset {
  std::vector<Instance> instances;
  int d_in = 0;
  DatasetMeta metadata;

  std::size_t size() const { return instances.size(); }
};

// Instance ids must be dense 0..N-1 in storage order; throws ParseError if not.
void validate_dataset(const Dataset& d);

/// Deterministic RNG: mt19937_64 raw stream with hand-rolled distributions so
/// the sequence is identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal, Box-Muller with cached spare
  double normal();

  // unbiased draw from [0, n), n > 0
  std::size_t uniform_index(std::size_t n);

  template <class T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::swap(xs[i - 1], xs[uniform_index(i)]);
    }
  }

  std::string save_state() const;
  void load_state(const std::string& s);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cc
