#include "latreg/numtheory.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "latreg/random.hpp"

namespace latreg {
namespace {

constexpr std::uint64_t kChunk = 4096;

BigInt euclid(BigInt a, BigInt b) {
  // magnitudes only
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::uint64_t count_chunk(const BigInt& q1, const BigInt& q2, const BigInt& q, std::uint64_t count, std::uint64_t seed) {
  Rng rng(seed);
  const BigInt hi1 = q1 + q;
  const BigInt hi2 = q2 + q;
  const bool small = hi1.fits_ulong_p() && hi2.fits_ulong_p() && q1 >= 0 && q2 >= 0;
  std::uint64_t coprime = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (small) {
      const std::uint64_t span = q.get_ui() + 1;
      const std::uint64_t a = q1.get_ui() + rng.below(span);
      const std::uint64_t b = q2.get_ui() + rng.below(span);
      if (std::gcd(a, b) == 1) ++coprime;
    } else {
      const BigInt a = rng.uniform_int(q1, hi1);
      const BigInt b = rng.uniform_int(q2, hi2);
      if (euclid(a, b) == 1) ++coprime;
    }
  }
  return coprime;
}

}  // namespace

GcdResult gcd_vector(const IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) g = euclid(g, x);
  return GcdResult{g, g == 0};
}

bool gcd_scaling_check(const IntVector& v, const BigInt& lambda) {
  IntVector scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = lambda * v[i];
  return gcd_vector(scaled).value == abs(lambda) * gcd_vector(v).value;
}

DensityEstimate coprimality_density(const BigInt& q1, const BigInt& q2, const BigInt& q, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw std::invalid_argument("coprimality_density: samples must be positive");
  if (q1 < 1 || q2 < 1 || q < 1) throw std::invalid_argument("coprimality_density: q1, q2, q must be positive");
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> counts(chunks, 0);
  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t c = first; c < chunks; c += stride) {
      const std::uint64_t count = std::min(kChunk, samples - c * kChunk);
      counts[c] = count_chunk(q1, q2, q, count, derive_seed(seed, c));
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  DensityEstimate out;
  out.samples = samples;
  out.coprime = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  out.estimate = make_rational(BigInt(static_cast<unsigned long>(out.coprime)), BigInt(static_cast<unsigned long>(samples)));
  const double phat = static_cast<double>(out.coprime) / static_cast<double>(samples);
  out.standardError = std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  return out;
}

}  // namespace latreg
