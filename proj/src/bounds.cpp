#include "latreg/bounds.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace latreg {
namespace {

constexpr mpfr_prec_t kPrecision = 256;

class Real {
 public:
  Real() { mpfr_init2(v_, kPrecision); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

mpfr_rnd_t mode(Rounding r) {
  switch (r) {
    case Rounding::Down: return MPFR_RNDD;
    case Rounding::Up: return MPFR_RNDU;
    case Rounding::Nearest: return MPFR_RNDN;
  }
  return MPFR_RNDN;
}

Rational to_rational(const Real& x) {
  if (mpfr_zero_p(x.get())) return 0;
  if (!mpfr_number_p(x.get())) throw std::domain_error("bounds: non-finite intermediate value");
  BigInt mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.get());
  if (e >= 0) return Rational(mant * pow2(static_cast<unsigned long>(e)));
  return make_rational(mant, pow2(static_cast<unsigned long>(-e)));
}

void set(Real& out, const Rational& x, Rounding r) { mpfr_set_q(out.get(), x.get_mpq_t(), mode(r)); }

// log2 of a positive rational, directed. The argument is first rounded in
// the same direction, so monotonicity keeps the bound on the right side.
Rational log2_directed(const Rational& x, Rounding r) {
  if (x <= 0) throw std::domain_error("log2 of a non-positive value");
  Real a;
  set(a, x, r);
  mpfr_log2(a.get(), a.get(), mode(r));
  return to_rational(a);
}

// log2(sqrt(k) * s + t) for k, s, t >= 0, directed.
Rational log2_sqrt_combo(std::size_t k, const Rational& s, const Rational& t, Rounding r) {
  Real a, b;
  mpfr_set_ui(a.get(), k, mode(r));
  mpfr_sqrt(a.get(), a.get(), mode(r));
  set(b, s, r);
  mpfr_mul(a.get(), a.get(), b.get(), mode(r));
  set(b, t, r);
  mpfr_add(a.get(), a.get(), b.get(), mode(r));
  if (mpfr_sgn(a.get()) <= 0) throw std::domain_error("log2 of a non-positive value");
  mpfr_log2(a.get(), a.get(), mode(r));
  return to_rational(a);
}

Rational size_ratio(std::size_t a, std::size_t b) {
  return make_rational(BigInt(static_cast<unsigned long>(a)), BigInt(static_cast<unsigned long>(b)));
}

// base^(-exponent) for an integer base >= 2 and rational exponent > 0.
Rational power_neg(const BigInt& base, const Rational& exponent) {
  if (exponent.get_den() == 1 && exponent.get_num().fits_ulong_p() && exponent.get_num() < 1'000'000) {
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), exponent.get_num().get_ui());
    return make_rational(1, pw);
  }
  Real b, e;
  mpfr_set_z(b.get(), base.get_mpz_t(), MPFR_RNDN);
  set(e, -exponent, Rounding::Nearest);
  mpfr_pow(b.get(), b.get(), e.get(), MPFR_RNDN);
  return to_rational(b);
}

void check_sizes(std::size_t n, std::size_t p) {
  if (n == 0 || p == 0) throw std::invalid_argument("bounds: n and p must be positive");
}

}  // namespace

Rational log2_bound(const Rational& x, Rounding rounding) { return log2_directed(x, rounding); }

Rational ln_bound(const Rational& x, Rounding rounding) {
  if (x <= 0) throw std::domain_error("ln of a non-positive value");
  if (x == 1) return 0;
  Real a;
  set(a, x, rounding);
  mpfr_log(a.get(), a.get(), mode(rounding));
  return to_rational(a);
}

Rational elo_condition_rhs(std::size_t n, std::size_t p, const BigInt& rHat, const BigInt& wInf, const Rational& c) {
  check_sizes(n, p);
  const Rational dim = size_ratio(2 * n + p, 1);
  // R sqrt p + (W+1) sqrt n, with both roots rounded up
  Real a, b;
  mpfr_set_ui(a.get(), p, MPFR_RNDU);
  mpfr_sqrt(a.get(), a.get(), MPFR_RNDU);
  mpfr_mul_z(a.get(), a.get(), rHat.get_mpz_t(), MPFR_RNDU);
  mpfr_set_ui(b.get(), n, MPFR_RNDU);
  mpfr_sqrt(b.get(), b.get(), MPFR_RNDU);
  const BigInt w1 = wInf + 1;
  mpfr_mul_z(b.get(), b.get(), w1.get_mpz_t(), MPFR_RNDU);
  mpfr_add(a.get(), a.get(), b.get(), MPFR_RNDU);
  mpfr_log2(a.get(), a.get(), MPFR_RNDU);
  const Rational logArg = to_rational(a);
  const Rational logDensity = log2_directed((1 + c) * size_ratio(n * p, 1), Rounding::Up);
  return dim / size_ratio(2 * n, 1) * (dim + 10 * logArg) + 6 * logDensity;
}

Rational lbr_condition_rhs(unsigned nBits, const ProblemProfile& profile, const BigInt& qHat, const BigInt& rHat,
                           NoiseModel model) {
  check_sizes(profile.n, profile.p);
  const std::size_t n = profile.n;
  const std::size_t p = profile.p;
  const Rational dim = size_ratio(2 * n + p, 1);
  const Rational scaledSigma = Rational(pow2(nBits)) * profile.sigma;
  const Rational offset(rHat * static_cast<unsigned long>(p));
  const Rational noiseLog = model == NoiseModel::Adversarial
                                ? log2_directed(scaledSigma + offset, Rounding::Up)
                                : log2_sqrt_combo(n * p, scaledSigma, offset, Rounding::Up);
  const Rational qLog = log2_directed(Rational(qHat), Rounding::Up);
  const Rational densityLog = log2_directed(3 * (1 + profile.c) * size_ratio(n * p, 1), Rounding::Up);
  return dim / 2 * (dim + 10 * qLog + 10 * noiseLog + 20 * densityLog);
}

bool lbr_condition_holds(unsigned nBits, const ProblemProfile& profile, const BigInt& qHat, const BigInt& rHat,
                         NoiseModel model) {
  return Rational(nBits) > lbr_condition_rhs(nBits, profile, qHat, rHat, model);
}

BoundReport cor2_window(const ProblemProfile& profile) {
  check_sizes(profile.n, profile.p);
  const std::size_t n = profile.n;
  const std::size_t p = profile.p;
  if (profile.sigma < 0) throw std::invalid_argument("cor2_window: sigma must be non-negative");
  if (profile.epsilon <= 0) throw std::invalid_argument("cor2_window: epsilon must be positive");

  BoundReport report;
  const Rational squareTerm = size_ratio((p + 2 * n) * (p + 2 * n), 2 * n);
  const Rational logRQ = log2_directed(Rational(profile.r * profile.q), Rounding::Up);
  const Rational logTerm = (2 + size_ratio(p, n)) * logRQ;
  report.requiredN = (1 + profile.epsilon) * (squareTerm + logTerm);
  report.minimumIntegerN = ceil(report.requiredN);
  report.sigmaCeilingLog2 = -report.requiredN;
  if (profile.sigma > 0) {
    const Rational inv = 1 / profile.sigma;
    report.maxN = log2_directed(inv, Rounding::Down);
    report.maxNNatural = ln_bound(inv, Rounding::Down);
    report.satisfiable = report.requiredN <= *report.maxN;
  } else {
    report.satisfiable = true;
  }
  const Rational pArg = Rational(300) / ((1 + profile.c) * profile.epsilon);
  report.pThreshold = Rational(300) / profile.epsilon * log2_directed(pArg, Rounding::Up);
  report.pThresholdMet = Rational(static_cast<unsigned long>(p)) >= report.pThreshold;
  report.detail = {
      {"(p+2n)^2/(2n)", squareTerm},
      {"(2+p/n)log2(RQ)", logTerm},
      {"1+eps", 1 + profile.epsilon},
  };
  return report;
}

Rational info_theoretic_sigma_ceiling(std::size_t n, std::size_t p, const BigInt& q, const BigInt& r) {
  check_sizes(n, p);
  if (q < 1 || r < 1) throw std::invalid_argument("info_theoretic_sigma_ceiling: Q and R must be positive");
  const BigInt base = 2 * q * r + 1;
  Real t, e;
  mpfr_set_z(t.get(), base.get_mpz_t(), MPFR_RNDN);
  set(e, size_ratio(2 * p, n), Rounding::Nearest);
  mpfr_pow(t.get(), t.get(), e.get(), MPFR_RNDN);
  mpfr_sub_ui(t.get(), t.get(), 1, MPFR_RNDN);
  mpfr_rec_sqrt(t.get(), t.get(), MPFR_RNDN);
  const BigInt np = BigInt(static_cast<unsigned long>(n)) * static_cast<unsigned long>(p);
  const BigInt scale = r * np * np * np;
  mpfr_mul_z(t.get(), t.get(), scale.get_mpz_t(), MPFR_RNDN);
  return to_rational(t);
}

PhaseBoundary phase_boundary_sigma0(std::size_t n, std::size_t p, const BigInt& r, const BigInt& q) {
  check_sizes(n, p);
  if (q < 1 || r < 1) throw std::invalid_argument("phase_boundary_sigma0: Q and R must be positive");
  PhaseBoundary out;
  const BigInt rq = r * q;
  if (rq == 1) {
    out.sigma0 = 1;
    out.log2Sigma0 = 0;
    out.degenerate = true;
    return out;
  }
  const Rational ratio = size_ratio(p, n);
  out.sigma0 = power_neg(rq, ratio);
  out.log2Sigma0 = -ratio * log2_directed(Rational(rq), Rounding::Nearest);
  return out;
}

PhaseThresholds phase_thresholds(std::size_t n, std::size_t p, const BigInt& r, const BigInt& q, const Rational& epsilon) {
  check_sizes(n, p);
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("phase_thresholds: epsilon must lie in (0, 1)");
  const BigInt rq = r * q;
  const Rational ratio = size_ratio(p, n);
  PhaseThresholds out;
  if (rq == 1) {
    out.recoverableBelow = out.impossibleAbove = 1;
    return out;
  }
  out.recoverableBelow = power_neg(rq, ratio * (1 + epsilon));
  out.impossibleAbove = power_neg(rq, ratio * (1 - epsilon));
  const Rational logRQ = log2_directed(Rational(rq), Rounding::Nearest);
  out.log2RecoverableBelow = -ratio * (1 + epsilon) * logRQ;
  out.log2ImpossibleAbove = -ratio * (1 - epsilon) * logRQ;
  return out;
}

}  // namespace latreg
