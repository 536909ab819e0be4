#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace pivotlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-mode generator: output j is mix64(key + j·γ). Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key = 0) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in the closed range [lo, hi].
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(*this);
  }
  double normal() { return normal_(*this); }
  /// (Z1 + i Z2)/√2, unit variance complex Gaussian.
  std::complex<double> complex_normal();
  double rademacher() { return ((*this)() >> 63) ? 1.0 : -1.0; }
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stream for trial `trial_index` of an experiment keyed by `master_seed`.
/// Depends only on the two arguments, never on scheduling.
RandomStream seed_stream(std::uint64_t master_seed, std::uint64_t trial_index);

}  // namespace pivotlab
