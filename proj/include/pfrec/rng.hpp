#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "pfrec/core.hpp"

namespace pfrec {

/// Seeded random stream with a platform-stable output sequence.
///
/// The bit source is std::mt19937_64, whose output is fixed by the C++
/// standard. Every derived variate (uniform reals, bounded integers, normals)
/// is computed here rather than through <random> distributions, whose
/// algorithms are implementation-defined.
///
///   uniform01   : top 53 bits of one draw, scaled by 2^-53, in [0, 1)
///   below(n)    : rejection sampling on the largest multiple of n below 2^64
///   normal      : Marsaglia polar method, the second variate is cached
class Rng {
public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/polar-normal/v1";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  double normal();
  /// Independent unit-variance real and imaginary parts.
  std::complex<double> complex_normal();

  /// `k` distinct values from [0, n), returned sorted. Partial Fisher-Yates.
  std::vector<Index> sample_without_replacement(Index n, Index k);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-sensitive combination of a seed with cell and trial indices; used to
/// give every Monte-Carlo trial its own replayable stream.
std::uint64_t hash64(std::uint64_t seed, std::uint64_t cell, std::uint64_t trial) noexcept;

} // namespace pfrec
