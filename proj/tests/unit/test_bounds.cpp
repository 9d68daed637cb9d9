#include <doctest.h>

#include <cmath>

#include "latreg/bounds.hpp"
#include "latreg/random.hpp"

using namespace latreg;

namespace {

// Straight long-double evaluations of the closed forms, used as an
// independent check on the directed MPFR versions.
long double elo_rhs_ld(long double n, long double p, long double r, long double w, long double c) {
  return (2 * n + p) / (2 * n) * (2 * n + p + 10 * std::log2(r * std::sqrt(p) + (w + 1) * std::sqrt(n))) +
         6 * std::log2((1 + c) * n * p);
}

long double lbr_rhs_ld(long double bits, long double n, long double p, long double q, long double r, long double sigma,
                       long double c) {
  return (2 * n + p) / 2 *
         (2 * n + p + 10 * std::log2(q) + 10 * std::log2(std::exp2(bits) * sigma + r * p) +
          20 * std::log2(3 * (1 + c) * n * p));
}

double d(const Rational& x) { return x.get_d(); }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("directed logarithms bracket the true value") {
  for (long v : {3L, 5L, 7L, 1000L, 123456789L}) {
    const Rational x(v);
    const Rational lo = log2_bound(x, Rounding::Down), hi = log2_bound(x, Rounding::Up);
    CHECK(lo < hi);
    CHECK(hi - lo < Rational(1, BigInt(pow2(200))));
    CHECK(d(lo) == doctest::Approx(std::log2(static_cast<double>(v))).epsilon(1e-14));
  }
  CHECK(log2_bound(Rational(1024), Rounding::Down) == 10);
  CHECK(log2_bound(Rational(1, 8), Rounding::Up) == -3);
  CHECK(ln_bound(Rational(1), Rounding::Down) == 0);
  CHECK(d(ln_bound(Rational(10), Rounding::Up)) == doctest::Approx(std::log(10.0)));
  CHECK_THROWS(log2_bound(Rational(0), Rounding::Up));
}

TEST_CASE("ELO condition example and oracle agreement") {
  const Rational v = elo_condition_rhs(1, 2, 1, 0, 1);
  CHECK(std::abs(d(v) - 45.43) < 0.01);
  CHECK(d(v) == doctest::Approx(static_cast<double>(elo_rhs_ld(1, 2, 1, 0, 1))).epsilon(1e-12));
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(40), p = 1 + rng.below(100);
    const long r = 1 + static_cast<long>(rng.below(1000)), w = static_cast<long>(rng.below(1000));
    const Rational rhs = elo_condition_rhs(n, p, r, w, Rational(3, 2));
    CHECK(d(rhs) == doctest::Approx(static_cast<double>(elo_rhs_ld(n, p, r, w, 1.5L))).epsilon(1e-12));
    CHECK(elo_condition_rhs(n, p, r + 1, w, Rational(3, 2)) > rhs);
    CHECK(elo_condition_rhs(n, p, r, w + 1, Rational(3, 2)) > rhs);
  }
}

TEST_CASE("LBR condition in the noiseless case") {
  ProblemProfile prof;
  prof.n = 10;
  prof.p = 30;
  prof.r = 100;
  prof.q = 1;
  prof.sigma = 0;
  prof.c = 1;
  const Rational rhs = lbr_condition_rhs(9600, prof, 1, 100, NoiseModel::Adversarial);
  // 25 (50 + 10 log2 3000 + 20 log2 1800)
  const long double expected = 25.0L * (50 + 10 * std::log2(3000.0L) + 20 * std::log2(1800.0L));
  CHECK(d(rhs) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
  CHECK(lbr_condition_holds(9600, prof, 1, 100, NoiseModel::Adversarial));
  CHECK_FALSE(lbr_condition_holds(9500, prof, 1, 100, NoiseModel::Adversarial));
  // sigma = 0: independent of N
  CHECK(lbr_condition_rhs(5, prof, 1, 100, NoiseModel::Adversarial) == rhs);
}

TEST_CASE("LBR condition with noise") {
  ProblemProfile prof;
  prof.n = 3;
  prof.p = 7;
  prof.r = 5;
  prof.sigma = Rational(1, 1000);
  for (unsigned bits : {1u, 10u, 40u, 80u}) {
    const Rational rhs = lbr_condition_rhs(bits, prof, 2, 5, NoiseModel::Adversarial);
    CHECK(d(rhs) == doctest::Approx(static_cast<double>(lbr_rhs_ld(bits, 3, 7, 2, 5, 0.001L, 1))).epsilon(1e-10));
  }
  // eventually false for fixed sigma > 0
  CHECK_FALSE(lbr_condition_holds(100000, prof, 2, 5, NoiseModel::Adversarial));
  // iid model equals adversarial at sqrt(np) sigma (np = 21 is not a square,
  // so compare against the oracle and the square case separately)
  ProblemProfile sq = prof;
  sq.n = 4;
  sq.p = 9;  // sqrt(36) = 6
  ProblemProfile scaled = sq;
  scaled.sigma = 6 * sq.sigma;
  CHECK(lbr_condition_rhs(30, sq, 2, 5, NoiseModel::Iid) == lbr_condition_rhs(30, scaled, 2, 5, NoiseModel::Adversarial));
  const Rational iid = lbr_condition_rhs(30, prof, 2, 5, NoiseModel::Iid);
  CHECK(d(iid) == doctest::Approx(static_cast<double>(lbr_rhs_ld(30, 3, 7, 2, 5, 0.001L * std::sqrt(21.0L), 1)))
                      .epsilon(1e-10));
}

TEST_CASE("cor2 window") {
  ProblemProfile prof;
  BoundReport rep = cor2_window(prof);
  CHECK(rep.requiredN == Rational(99, 20));
  CHECK(rep.minimumIntegerN == 5);
  CHECK_FALSE(rep.maxN.has_value());
  CHECK(rep.satisfiable);
  prof.sigma = Rational(1, BigInt(pow2(100)));
  rep = cor2_window(prof);
  CHECK(*rep.maxN == 100);
  CHECK(rep.satisfiable);
  prof.sigma = Rational(1, 16);
  rep = cor2_window(prof);
  CHECK(*rep.maxN == 4);
  CHECK_FALSE(rep.satisfiable);
  CHECK(rep.sigmaCeilingLog2 == -rep.requiredN);
  CHECK(d(*rep.maxNNatural) == doctest::Approx(std::log(16.0)));
  CHECK(d(rep.pThreshold) == doctest::Approx(3000 * std::log2(1500.0)).epsilon(1e-12));
}

TEST_CASE("information-theoretic ceiling") {
  CHECK(d(info_theoretic_sigma_ceiling(1, 1, 1, 1)) == doctest::Approx(1 / std::sqrt(8.0)).epsilon(1e-14));
  CHECK(d(info_theoretic_sigma_ceiling(2, 2, 1, 1)) == doctest::Approx(64 / std::sqrt(8.0)).epsilon(1e-14));
  // decreasing in p once p >= 3n
  for (std::size_t n : {1u, 2u, 5u}) {
    for (std::size_t p = 3 * n; p < 3 * n + 20; ++p) {
      CHECK(info_theoretic_sigma_ceiling(n, p + 1, 2, 3) < info_theoretic_sigma_ceiling(n, p, 2, 3));
    }
  }
  // the (np)^3 factor wins for small p: not monotone there
  CHECK(info_theoretic_sigma_ceiling(1, 2, 1, 1) > info_theoretic_sigma_ceiling(1, 1, 1, 1));
}

TEST_CASE("phase boundary") {
  PhaseBoundary b = phase_boundary_sigma0(2, 4, 2, 1);
  CHECK(b.sigma0 == Rational(1, 4));
  CHECK(b.log2Sigma0 == -2);
  CHECK_FALSE(b.degenerate);
  b = phase_boundary_sigma0(5, 5, 7, 3);
  CHECK(b.sigma0 == Rational(1, 21));
  b = phase_boundary_sigma0(3, 9, 1, 1);
  CHECK(b.degenerate);
  CHECK(b.sigma0 == 1);
  // non-integer exponent p/n = 3/2: 4^(-3/2) = 1/8
  CHECK(d(phase_boundary_sigma0(2, 3, 4, 1).sigma0) == doctest::Approx(0.125).epsilon(1e-15));
  // sigma0 grows with n
  CHECK(phase_boundary_sigma0(3, 6, 10, 1).sigma0 > phase_boundary_sigma0(2, 6, 10, 1).sigma0);
  const PhaseThresholds th = phase_thresholds(2, 4, 2, 1, Rational(1, 2));
  CHECK(th.recoverableBelow == Rational(1, 8));
  CHECK(th.impossibleAbove == Rational(1, 2));
  CHECK(th.recoverableBelow < th.impossibleAbove);
  CHECK_THROWS(phase_thresholds(2, 4, 2, 1, Rational(1)));
}

TEST_CASE("cor2 ceiling sits inside the phase bracket when p/n is large") {
  ProblemProfile prof;
  prof.n = 2;
  prof.p = 200;
  prof.r = pow2(40000);
  prof.q = 1;
  prof.epsilon = Rational(1, 20);
  const BoundReport rep = cor2_window(prof);
  const PhaseThresholds th = phase_thresholds(2, 200, prof.r, 1, Rational(1, 10));
  CHECK(rep.sigmaCeilingLog2 < th.log2ImpossibleAbove);
  CHECK(rep.sigmaCeilingLog2 > th.log2RecoverableBelow);
}

TEST_CASE("monotonicity over random profiles") {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    ProblemProfile prof;
    prof.n = 1 + rng.below(20);
    prof.p = 1 + rng.below(200);
    prof.r = rng.uniform_int(1, 1000);
    prof.q = rng.uniform_int(1, 50);
    prof.epsilon = make_rational(rng.uniform_int(1, 99), 100);
    const BoundReport rep = cor2_window(prof);
    const Rational square = make_rational(BigInt((prof.p + 2 * prof.n) * (prof.p + 2 * prof.n)), BigInt(2 * prof.n));
    CHECK(rep.requiredN >= square);
    ProblemProfile moreR = prof;
    moreR.r += 1;
    CHECK(cor2_window(moreR).requiredN >= rep.requiredN);
    const unsigned bits = 1 + static_cast<unsigned>(rng.below(200));
    prof.sigma = make_rational(1, rng.uniform_int(2, 1000000));
    const Rational base = lbr_condition_rhs(bits, prof, 2, prof.r, NoiseModel::Adversarial);
    CHECK(lbr_condition_rhs(bits, prof, 3, prof.r, NoiseModel::Adversarial) > base);
    CHECK(lbr_condition_rhs(bits, prof, 2, prof.r + 1, NoiseModel::Adversarial) > base);
    ProblemProfile noisier = prof;
    noisier.sigma *= 2;
    CHECK(lbr_condition_rhs(bits, noisier, 2, prof.r, NoiseModel::Adversarial) > base);
  }
}

}
