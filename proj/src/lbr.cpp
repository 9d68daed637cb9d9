#include "latreg/lbr.hpp"

namespace latreg {

void validate(const LbrInput& input) {
  const std::size_t n = input.y.size();
  if (n == 0) throw InputError("lbr: need at least one observation");
  if (input.x.size() != n) {
    throw InputError("lbr: X has " + std::to_string(input.x.size()) + " rows but Y has " + std::to_string(n) +
                     " entries");
  }
  const std::size_t p = input.x.front().size();
  if (p == 0) throw InputError("lbr: X has no columns");
  for (std::size_t i = 0; i < n; ++i) {
    if (input.x[i].size() != p) {
      throw InputError("lbr: row " + std::to_string(i) + " of X has " + std::to_string(input.x[i].size()) +
                       " entries, expected " + std::to_string(p));
    }
  }
  if (input.nBits < 1) throw InputError("lbr: N must be >= 1");
  if (input.qHat < 1) throw InputError("lbr: qHat must be >= 1");
  if (input.rHat < 1) throw InputError("lbr: rHat must be >= 1");
  if (input.wHat <= 0) throw InputError("lbr: wHat must be > 0");
}

BigInt effective_noise_bound(unsigned nBits, const BigInt& qHat, const Rational& sigma, const BigInt& rHat, std::size_t p) {
  const Rational bound = 2 * Rational(qHat) * (Rational(pow2(nBits)) * sigma + Rational(rHat * static_cast<unsigned long>(p)));
  return ceil(bound);
}

EloInput lift_instance(const LbrInput& input) {
  validate(input);
  EloInput lifted;
  lifted.y.reserve(input.n());
  for (const auto& v : input.y) lifted.y.push_back(scale_to_integer(truncate(v, input.nBits), input.qHat));
  lifted.x.reserve(input.n());
  for (const auto& row : input.x) {
    IntVector r;
    r.reserve(row.size());
    for (const auto& v : row) r.push_back(truncate(v, input.nBits).scaled);
    lifted.x.push_back(std::move(r));
  }
  lifted.rHat = input.qHat * input.rHat;
  lifted.wHat = effective_noise_bound(input.nBits, input.qHat, input.wHat, input.rHat, input.p());
  return lifted;
}

LbrResult lbr_recover(const LbrInput& input, std::uint64_t seed, const LllOptions& lll) {
  const EloInput lifted = lift_instance(input);
  EloResult inner = elo_recover(lifted, seed, lll);
  LbrResult out;
  out.betaHat.reserve(inner.betaHat.size());
  for (const auto& v : inner.betaHat) out.betaHat.push_back(make_rational(v, input.qHat));
  out.liftedBeta = std::move(inner.betaHat);
  out.trace = std::move(inner.trace);
  return out;
}

}  // namespace latreg
