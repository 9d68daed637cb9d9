#include "latreg/elo.hpp"

#include <algorithm>

#include "latreg/numtheory.hpp"

namespace latreg {

void validate(const EloInput& input) {
  const std::size_t n = input.y.size();
  if (n == 0) throw InputError("elo: need at least one observation");
  if (input.x.size() != n) {
    throw InputError("elo: X has " + std::to_string(input.x.size()) + " rows but Y has " + std::to_string(n) +
                     " entries");
  }
  const std::size_t p = input.x.front().size();
  if (p == 0) throw InputError("elo: X has no columns");
  for (std::size_t i = 0; i < n; ++i) {
    if (input.x[i].size() != p) {
      throw InputError("elo: row " + std::to_string(i) + " of X has " + std::to_string(input.x[i].size()) +
                       " entries, expected " + std::to_string(p));
    }
  }
  if (input.rHat < 1) throw InputError("elo: rHat must be >= 1");
  if (input.wHat < 1) throw InputError("elo: wHat must be >= 1");
}

BigInt shift_upper_bound(std::size_t p, const BigInt& rHat) {
  const unsigned logp = std::max(1u, ceil_log2(p));
  return 2 * rHat + logp;
}

IntVector sample_shift(std::size_t p, const BigInt& rHat, Rng& rng) {
  const BigInt lo = rHat + 1;
  const BigInt hi = shift_upper_bound(p, rHat);
  IntVector z(p);
  for (auto& v : z) v = rng.uniform_int(lo, hi);
  return z;
}

ClampResult clamp_observations(const IntVector& y1) {
  ClampResult out;
  out.values = y1;
  for (std::size_t i = 0; i < y1.size(); ++i) {
    if (abs(y1[i]) < 3) {
      out.values[i] = 3;
      out.indices.push_back(i);
    }
  }
  return out;
}

BigInt compute_m(std::size_t n, std::size_t p, const BigInt& rHat, const BigInt& wHat) {
  const unsigned long exponent = n + (p + 1) / 2 + 3;
  const BigInt sqrtP = isqrt_ceil(BigInt(static_cast<unsigned long>(p)));
  const BigInt sqrtN = isqrt_ceil(BigInt(static_cast<unsigned long>(n)));
  return pow2(exponent) * static_cast<unsigned long>(p) * (rHat * sqrtP + wHat * sqrtN);
}

IntMatrix build_lattice_matrix(const IntMatrix& x, const IntVector& y2, const BigInt& m) {
  const std::size_t n = y2.size();
  if (x.size() != n) throw std::invalid_argument("build_lattice_matrix: X and Y2 disagree on n");
  const std::size_t p = n == 0 ? 0 : x.front().size();
  const std::size_t dim = 2 * n + p;
  for (const auto& v : y2) {
    if (v == 0) throw std::invalid_argument("build_lattice_matrix: Y2 has a zero entry (clamp first)");
  }
  IntMatrix a(dim, IntVector(dim, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) a[i][j] = m * x[i][j];
    a[i][p + i] = -m * y2[i];
    a[i][p + n + i] = m;
  }
  for (std::size_t j = 0; j < p; ++j) a[n + j][j] = 1;
  for (std::size_t i = 0; i < n; ++i) a[n + p + i][p + n + i] = 1;
  return a;
}

EloResult elo_recover(const EloInput& input, std::uint64_t seed, const LllOptions& lll) {
  validate(input);
  const std::size_t n = input.n();
  const std::size_t p = input.p();

  EloResult result;
  EloTrace& trace = result.trace;
  trace.seed = seed;
  Rng rng(seed);
  trace.shift = sample_shift(p, input.rHat, rng);

  trace.y1 = input.y;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) mpz_addmul(trace.y1[i].get_mpz_t(), input.x[i][j].get_mpz_t(), trace.shift[j].get_mpz_t());
  }
  auto clamped = clamp_observations(trace.y1);
  trace.y2 = std::move(clamped.values);
  trace.clampedIndices = std::move(clamped.indices);
  trace.m = compute_m(n, p, input.rHat, input.wHat);

  const auto basis = LatticeBasis::from_columns(build_lattice_matrix(input.x, trace.y2, trace.m));
  const auto report = lll_reduce(basis, lll);
  trace.lllSwaps = report.swapCount;
  trace.lllSizeReductions = report.sizeReductionCount;
  trace.lllMaxBits = report.maxIntermediateBits;
  trace.zhat = shortest_output_vector(report);

  const IntVector slice(trace.zhat.begin() + static_cast<std::ptrdiff_t>(n),
                        trace.zhat.begin() + static_cast<std::ptrdiff_t>(n + p));
  const GcdResult g = gcd_vector(slice);
  result.betaHat.assign(p, BigInt(0));
  if (g.allZero) {
    trace.g = 0;
    trace.degenerate = true;
    return result;
  }

  // beta* + Z is entrywise >= 1, so the multiplier's sign is the one making
  // the divided slice positive.
  IntVector beta(p);
  for (std::size_t j = 0; j < p; ++j) {
    mpz_divexact(beta[j].get_mpz_t(), slice[j].get_mpz_t(), g.value.get_mpz_t());
  }
  const bool allPositive = std::all_of(beta.begin(), beta.end(), [](const BigInt& v) { return v >= 1; });
  const bool allNegative = std::all_of(beta.begin(), beta.end(), [](const BigInt& v) { return v <= -1; });
  if (allPositive) {
    trace.g = g.value;
  } else if (allNegative) {
    trace.g = -g.value;
    for (auto& v : beta) v = -v;
  } else {
    trace.g = g.value;
    trace.degenerate = true;
    return result;
  }
  for (std::size_t j = 0; j < p; ++j) result.betaHat[j] = beta[j] - trace.shift[j];
  return result;
}

bool verify_residual(const EloInput& input, const IntVector& betaHat, const BigInt& tolerance) {
  if (betaHat.size() != input.p()) throw InputError("verify_residual: betaHat has the wrong length");
  for (std::size_t i = 0; i < input.n(); ++i) {
    BigInt r = input.y[i];
    for (std::size_t j = 0; j < betaHat.size(); ++j) mpz_submul(r.get_mpz_t(), input.x[i][j].get_mpz_t(), betaHat[j].get_mpz_t());
    if (abs(r) > tolerance) return false;
  }
  return true;
}

}  // namespace latreg
