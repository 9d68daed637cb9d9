#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "latreg/elo.hpp"
#include "latreg/lbr.hpp"

namespace latreg {

/// Bits of the dyadic grid used for continuous draws (X ~ U(0,1), W ~ U(-s,s)).
inline constexpr unsigned kContinuousBits = 256;

struct GenerationParams {
  std::size_t n = 0;
  std::size_t p = 0;
  BigInt r{1};
  BigInt q{1};
  Rational sigma{0};
  unsigned nBits = 0;  // integer-feature bit size (ELO instances only)
  std::string xDistribution;
  std::string betaDistribution;
  std::uint64_t seed = 0;
};

/// Planted instance. Y = X betaStar + W holds exactly.
struct RegressionInstance {
  RationalMatrix x;
  RationalVector y;
  RationalVector betaStar;
  RationalVector w;
  GenerationParams params;

  /// Integer view of an ELO instance; throws InputError on non-integer data.
  EloInput to_elo_input(const BigInt& rHat, const BigInt& wHat) const;
  LbrInput to_lbr_input(unsigned nBits, const BigInt& qHat, const BigInt& rHat, const Rational& wHat) const;
};

/// beta* iid uniform on {1..R}, X iid uniform on {1..2^nBits}, W = 0.
RegressionInstance gen_elo_instance(std::size_t n, std::size_t p, const BigInt& r, unsigned nBits, std::uint64_t seed);

/// beta* entries are 0 w.p. 1/2, else K/Q with K uniform on {1..R Q}; X iid
/// U(0,1) and W iid U(-sigma, sigma), both on the 2^-256 dyadic grid.
RegressionInstance gen_lbr_instance(std::size_t n, std::size_t p, const BigInt& r, const Rational& sigma,
                                    std::uint64_t seed, const BigInt& q = 1);

/// ceil(p^2 / (2 alpha n)).
unsigned elo_bits_for_alpha(std::size_t p, std::size_t n, const Rational& alpha);

/// Noise levels: any exact rational, or "exp(x)" for a rational x, realized
/// as the nearest 2^-256-relative dyadic.
Rational parse_sigma(const std::string& text);

struct TrialRecord {
  std::uint64_t seed = 0;
  bool success = false;  // betaHat == betaStar exactly
  double wallTime = 0;   // seconds, recovery only
  std::uint64_t lllSwaps = 0;
  bool degenerate = false;
};

struct SweepRow {
  std::size_t n = 0;
  std::size_t p = 0;
  std::string label;  // alpha or sigma as given
  unsigned nBits = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double meanTime = 0;
  std::vector<TrialRecord> records;

  Rational success_rate() const;
};

struct EloSweepSpec {
  std::size_t p = 30;
  std::vector<std::size_t> nList;
  BigInt r{100};
  std::vector<std::string> alphas;
  std::uint64_t trials = 20;
  std::uint64_t seed = 0;
};

struct LbrSweepSpec {
  std::size_t p = 30;
  std::size_t n = 10;
  BigInt r{100};
  BigInt q{1};
  std::vector<std::string> sigmas;
  std::vector<unsigned> nBitsList;
  std::uint64_t trials = 20;
  std::uint64_t seed = 0;
};

/// Worker count from LATREG_WORKERS, else hardware concurrency.
unsigned default_workers();

/// Rows ordered by (n, alpha) as listed in the spec.
std::vector<SweepRow> run_elo_sweep(const EloSweepSpec& spec, unsigned workers);

/// Rows ordered by (sigma, N) as listed in the spec. qHat = Q, rHat = R,
/// wHat = sigma, or 2^-N when sigma = 0.
std::vector<SweepRow> run_lbr_sweep(const LbrSweepSpec& spec, unsigned workers);

/// Header n,p,alpha_or_sigma,N,trials,success_rate,mean_time_s. Without
/// `timing` the time column holds NA so reruns are byte-identical.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing);

void validate(const EloSweepSpec& spec);
void validate(const LbrSweepSpec& spec);

}  // namespace latreg
