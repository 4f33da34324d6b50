#include "cc/core.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cc {

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot: dimension mismatch " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const FeatureVector& a, const FeatureVector& b) {
  return dot(a.values, b.values);
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

FeatureVector l2_normalize(const Vec& v) {
  const double n = norm(v);
  if (n == 0.0) throw DegenerateVector("l2_normalize: zero vector");
  FeatureVector out;
  out.values.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.values[i] = v[i] / n;
  return out;
}

void validate_dataset(const Dataset& d) {
  if (d.instances.empty()) throw EmptyInput("dataset: no instances");
  for (std::size_t i = 0; i < d.instances.size(); ++i) {
    if (d.instances[i].id != static_cast<int>(i)) {
      throw ParseError("dataset: instance ids must be dense 0..N-1, got id " +
                       std::to_string(d.instances[i].id) + " at position " +
                       std::to_string(i));
    }
    if (static_cast<int>(d.instances[i].raw.size()) != d.d_in) {
      throw ParseError("dataset: instance " + std::to_string(i) +
                       " has dimension " +
                       std::to_string(d.instances[i].raw.size()) +
                       ", expected " + std::to_string(d.d_in));
    }
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so the log is finite
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be > 0");
  const std::uint64_t nn = n;
  // reject the wrap-around remainder so every value is equally likely
  const std::uint64_t threshold = (0 - nn) % nn;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return static_cast<std::size_t>(x % nn);
}

std::string Rng::save_state() const {
  std::ostringstream os;
  os << engine_ << " " << (has_spare_ ? 1 : 0) << " ";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", spare_);
  os << buf;
  return os.str();
}

void Rng::load_state(const std::string& s) {
  std::istringstream is(s);
  is >> engine_;
  int spare_flag = 0;
  is >> spare_flag >> spare_;
  if (is.fail()) throw ParseError("Rng::load_state: malformed state string");
  has_spare_ = spare_flag != 0;
}

}  // namespace cc
