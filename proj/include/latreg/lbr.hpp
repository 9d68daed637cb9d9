#pragma once

#include "latreg/elo.hpp"

namespace latreg {

/// Real-valued observations Y = X beta* + W, with beta* having entries K_i / Q.
/// qHat should be a multiple of Q, rHat >= |beta*|_inf, wHat >= |W|_inf.
struct LbrInput {
  RationalVector y;
  RationalMatrix x;
  unsigned nBits = 1;  // truncation level N
  BigInt qHat{1};
  BigInt rHat{1};
  Rational wHat{1};

  std::size_t n() const noexcept { return y.size(); }
  std::size_t p() const noexcept { return x.empty() ? 0 : x.front().size(); }
};

struct LbrResult {
  RationalVector betaHat;  // entries have denominators dividing qHat
  IntVector liftedBeta;    // ELO output, qHat * betaHat
  EloTrace trace;
};

/// ceil(2 qHat (2^N sigma + rHat p)), the integer noise bound handed to ELO.
BigInt effective_noise_bound(unsigned nBits, const BigInt& qHat, const Rational& sigma, const BigInt& rHat, std::size_t p);

/// Truncates at N bits and lifts to integers: Y' = 2^N qHat Y_N, X' = 2^N X_N,
/// rHat' = qHat rHat, wHat' = effective_noise_bound(N, qHat, wHat, rHat, p).
EloInput lift_instance(const LbrInput& input);

LbrResult lbr_recover(const LbrInput& input, std::uint64_t seed, const LllOptions& lll = {});

void validate(const LbrInput& input);

}  // namespace latreg
