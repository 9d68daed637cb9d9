#pragma once

#include <cstdint>

#include "latreg/exactnum.hpp"

namespace latreg {

struct GcdResult {
  BigInt value;  // non-negative
  bool allZero = false;
};

/// Pairwise Euclid, left to right, on magnitudes. gcd of all zeros is 0.
GcdResult gcd_vector(const IntVector& v);

/// gcd(lambda * v) == |lambda| * gcd(v).
bool gcd_scaling_check(const IntVector& v, const BigInt& lambda);

struct DensityEstimate {
  Rational estimate;  // coprime pairs / samples
  double standardError = 0;
  std::uint64_t samples = 0;
  std::uint64_t coprime = 0;
};

/// Monte-Carlo estimate of P[gcd(a, b) = 1] with a uniform on [q1, q1 + q]
/// and b uniform on [q2, q2 + q]. Samples are drawn in fixed-size chunks,
/// each with a seed derived from (seed, chunk index), and the chunks are
/// spread over `workers` threads; the result does not depend on `workers`.
DensityEstimate coprimality_density(const BigInt& q1, const BigInt& q2, const BigInt& q, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers = 1);

}  // namespace latreg
