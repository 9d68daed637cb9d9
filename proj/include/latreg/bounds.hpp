#pragma once

#include <optional>
#include <string>

#include "latreg/exactnum.hpp"

namespace latreg {

/// Parameters of a regression problem: sizes, magnitude bound R, denominator
/// Q, noise level sigma, density bound c of the feature distribution, and the
/// slack epsilon. `distributionConstant` is the C in E|V| <= C 2^N; no
/// evaluated inequality uses it.
struct ProblemProfile {
  std::size_t n = 1;
  std::size_t p = 1;
  BigInt r{1};
  BigInt q{1};
  Rational sigma{0};
  Rational c{1};
  Rational epsilon{1, 10};
  Rational distributionConstant{1};
};

enum class Rounding { Down, Up, Nearest };
enum class NoiseModel { Adversarial, Iid };

/// Directed bounds on logarithms of positive rationals. Exact whenever the
/// result is exactly representable (powers of two for log2); otherwise
/// within 2^-200 relative of the true value, on the requested side.
Rational log2_bound(const Rational& x, Rounding rounding);
Rational ln_bound(const Rational& x, Rounding rounding);

/// Right-hand side of the ELO sample condition
///   (2n+p)/(2n) [2n + p + 10 log2(rHat sqrt p + (wInf + 1) sqrt n)] + 6 log2((1+c) n p),
/// rounded up.
Rational elo_condition_rhs(std::size_t n, std::size_t p, const BigInt& rHat, const BigInt& wInf, const Rational& c);

/// Right-hand side of the LBR truncation condition at level N,
///   (2n+p)/2 (2n + p + 10 log2 qHat + 10 log2(2^N s + rHat p) + 20 log2(3 (1+c) n p)),
/// with s = sigma (adversarial) or sqrt(np) sigma (iid), rounded up.
Rational lbr_condition_rhs(unsigned nBits, const ProblemProfile& profile, const BigInt& qHat, const BigInt& rHat,
                           NoiseModel model);

/// N > lbr_condition_rhs(N, ...). N appears on both sides; no solving.
bool lbr_condition_holds(unsigned nBits, const ProblemProfile& profile, const BigInt& qHat, const BigInt& rHat,
                         NoiseModel model);

struct BoundTerm {
  std::string label;
  Rational value;
};

struct BoundReport {
  Rational requiredN;              // rounded up
  std::optional<Rational> maxN;    // log2(1/sigma) rounded down; empty means unbounded
  std::optional<Rational> maxNNatural;  // ln(1/sigma) rounded down, for natural-log readings of sigma
  bool satisfiable = false;        // requiredN <= maxN
  BigInt minimumIntegerN;          // ceil(requiredN)
  Rational sigmaCeilingLog2;       // sigma must be <= 2^sigmaCeilingLog2
  Rational pThreshold;             // (300/eps) log2(300 / ((1+c) eps)), rounded up
  bool pThresholdMet = false;
  std::vector<BoundTerm> detail;
};

/// Truncation window for the single-sample-count noise tolerance result:
/// log2(1/sigma) >= N >= (1+eps)[(p+2n)^2/(2n) + (2 + p/n) log2(RQ)].
BoundReport cor2_window(const ProblemProfile& profile);

/// R (np)^3 ((2QR+1)^(2p/n) - 1)^(-1/2); above this sigma exact recovery is
/// impossible under Gaussian noise.
Rational info_theoretic_sigma_ceiling(std::size_t n, std::size_t p, const BigInt& q, const BigInt& r);

struct PhaseBoundary {
  Rational sigma0;      // (RQ)^(-p/n)
  Rational log2Sigma0;  // -(p/n) log2(RQ)
  bool degenerate = false;  // RQ = 1
};

PhaseBoundary phase_boundary_sigma0(std::size_t n, std::size_t p, const BigInt& r, const BigInt& q);

struct PhaseThresholds {
  Rational recoverableBelow;  // sigma0^(1+eps)
  Rational impossibleAbove;   // sigma0^(1-eps)
  Rational log2RecoverableBelow;
  Rational log2ImpossibleAbove;
};

PhaseThresholds phase_thresholds(std::size_t n, std::size_t p, const BigInt& r, const BigInt& q, const Rational& epsilon);

}  // namespace latreg
