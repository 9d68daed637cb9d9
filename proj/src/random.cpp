#include "latreg/random.hpp"

#include <stdexcept>
#include <vector>

namespace latreg {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
  if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return v % bound;
  }
}

BigInt Rng::random_bits(std::size_t bits) {
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = next();
  if (const std::size_t extra = words * 64 - bits; extra > 0) buf.back() >>= extra;
  BigInt out;
  // least significant word first
  mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  return out;
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: empty range");
  if (bound.fits_ulong_p()) return BigInt(static_cast<unsigned long>(below(std::uint64_t{bound.get_ui()})));
  const BigInt top = bound - 1;
  const std::size_t bits = bit_length(top);
  for (;;) {
    BigInt v = random_bits(bits);
    if (v < bound) return v;
  }
}

BigInt Rng::uniform_int(const BigInt& lo, const BigInt& hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
  return lo + below(BigInt(hi - lo + 1));
}

Rational Rng::open_unit_dyadic(unsigned bits) {
  if (bits == 0) throw std::invalid_argument("Rng::open_unit_dyadic: zero bits");
  const BigInt k = uniform_int(1, pow2(bits) - 1);
  return make_rational(k, pow2(bits));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(splitmix(base) ^ a) ^ (b * 0xD6E8FEB86659FD93ULL));
}

}  // namespace latreg
