#pragma once

#include <cmath>
#include <cstdint>

#include "alphadpp/types.hpp"

namespace alphadpp {

// Counter-based generator: output_i = mix64(key + i * golden), the splitmix64
// finalizer over an affine counter.  Streams are derived by re-keying, so a
// (seed, stream) pair fully determines the sequence independent of thread
// scheduling; all downstream distributions are hand-rolled for bit stability.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x1F123BB5159A55E5ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  std::uint64_t operator()() { return mix64(key_ + (++counter_) * kGolden); }

  // Independent child stream; deterministic in (this key, stream id).
  CounterRng split(std::uint64_t stream) const {
    CounterRng r(0);
    r.key_ = mix64(key_ ^ mix64(stream * kGolden + 0x94D049BB133111EBULL));
    r.counter_ = 0;
    return r;
  }

  // Uniform on [0, 1), 53-bit mantissa.
  Real uniform() { return static_cast<Real>((*this)() >> 11) * 0x1.0p-53; }

  Real uniform_in(Real a, Real b) { return a + (b - a) * uniform(); }

  bool bernoulli(Real p) { return uniform() < p; }

  // Box-Muller; consumes exactly two uniforms per call.
  Real normal() {
    const Real u1 = (static_cast<Real>((*this)() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const Real u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Exact Poisson law via exponential inter-arrival times; O(mean) but the
  // means seen here are O(1).
  std::int64_t poisson(Real mean) {
    if (mean < 0) throw contract_error("poisson: negative mean");
    std::int64_t k = 0;
    Real acc = 0.0;
    while (true) {
      const Real u1 = (static_cast<Real>((*this)() >> 11) + 1.0) * 0x1.0p-53;
      acc += -std::log(u1);
      if (acc > mean) return k;
      ++k;
    }
  }

  // Index draw proportional to non-negative weights (need not be normalized).
  int pick(const VectorXr& weights) {
    Real total = 0;
    for (int i = 0; i < weights.size(); ++i) total += std::max(Real(0), weights[i]);
    if (total <= 0) throw contract_error("pick: non-positive weight vector");
    Real u = uniform() * total;
    for (int i = 0; i < weights.size(); ++i) {
      u -= std::max(Real(0), weights[i]);
      if (u < 0) return i;
    }
    return static_cast<int>(weights.size()) - 1;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace alphadpp
