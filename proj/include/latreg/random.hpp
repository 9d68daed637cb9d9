#pragma once

#include <cstdint>
#include <random>

#include "latreg/exactnum.hpp"

namespace latreg {

/// Seedable generator with platform-independent output. Wraps mt19937_64,
/// whose sequence is fixed by the standard; all range reductions are done
/// here by rejection sampling rather than through std distributions, whose
/// algorithms vary between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  BigInt below(const BigInt& bound);

  /// Uniform on the inclusive range [lo, hi].
  BigInt uniform_int(const BigInt& lo, const BigInt& hi);

  /// Uniform on {1, ..., 2^bits - 1} / 2^bits, an exact dyadic in (0, 1).
  Rational open_unit_dyadic(unsigned bits);

  bool coin() { return (next() >> 63) != 0; }

 private:
  BigInt random_bits(std::size_t bits);

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Mixes a base seed with up to two indices (splitmix64 finalizer), so trial
/// seeds do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace latreg
