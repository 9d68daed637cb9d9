#include <doctest.h>

#include "latreg/harness.hpp"
#include "latreg/lbr.hpp"
#include "support/oracles.hpp"

using namespace latreg;

TEST_SUITE("lbr") {

TEST_CASE("effective_noise_bound") {
  CHECK(effective_noise_bound(2, 1, 0, 1, 3) == 6);
  CHECK(effective_noise_bound(3, 2, Rational(1, 8), 1, 1) == 8);
  CHECK(effective_noise_bound(5, 1, 0, 4, 7) == effective_noise_bound(50, 1, 0, 4, 7));
  CHECK(effective_noise_bound(1, 3, Rational(1, 3), 1, 1) == 10);  // ceil(6 * (2/3 + 1))
}

TEST_CASE("lifted data are integers and the lifted noise stays in bound") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Rational sigma(1, 1000);
    const BigInt q = 3;
    const RegressionInstance inst = gen_lbr_instance(3, 5, 20, sigma, seed, q);
    const unsigned nBits = 40;
    const LbrInput in = inst.to_lbr_input(nBits, q, 20, sigma);
    const EloInput lifted = lift_instance(in);
    CHECK(lifted.rHat == 60);
    CHECK(lifted.wHat == effective_noise_bound(nBits, q, sigma, 20, 5));
    // the lifted planted vector q beta* is integral
    IntVector qBeta;
    for (const auto& b : inst.betaStar) {
      const Rational v = b * Rational(q);
      REQUIRE(v.get_den() == 1);
      qBeta.push_back(v.get_num());
    }
    for (std::size_t i = 0; i < 3; ++i) {
      BigInt r = lifted.y[i];
      for (std::size_t j = 0; j < 5; ++j) {
        // independent recomputation of the lift
        const Rational xn = truncate(inst.x[i][j], nBits).value();
        CHECK(lifted.x[i][j] == BigInt(xn * Rational(pow2(nBits))));
        r -= lifted.x[i][j] * qBeta[j];
      }
      const Rational yn = truncate(inst.y[i], nBits).value();
      CHECK(lifted.y[i] == BigInt(yn * Rational(pow2(nBits)) * Rational(q)));
      CHECK(abs(r) <= lifted.wHat - 1);
    }
  }
}

TEST_CASE("noiseless recovery at N = 125") {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    const RegressionInstance inst = gen_lbr_instance(10, 30, 100, 0, derive_seed(seed, 0));
    const LbrInput in = inst.to_lbr_input(125, 1, 100, 1);
    const LbrResult r = lbr_recover(in, derive_seed(seed, 1));
    CHECK_FALSE(r.trace.degenerate);
    CHECK(r.betaHat == inst.betaStar);
  }
}

TEST_CASE("zero coefficients and zero observations") {
  RationalMatrix x{{Rational(1, 3), Rational(2, 7)}, {Rational(5, 9), Rational(1, 11)}};
  LbrInput in{{0, 0}, x, 60, 1, 5, 1};
  const LbrResult r = lbr_recover(in, 0);
  CHECK(r.betaHat == RationalVector{0, 0});
}

TEST_CASE("rational coefficients with Q = 2") {
  const RationalVector beta{Rational(1, 2), Rational(-3, 2)};
  Rng rng(6);
  RationalMatrix x(1, RationalVector(2));
  for (auto& v : x[0]) v = rng.open_unit_dyadic(256);
  RationalVector y{x[0][0] * beta[0] + x[0][1] * beta[1]};
  LbrInput in{y, x, 200, 2, 2, Rational(1, BigInt(pow2(200)))};
  // A run fails exactly when the shifted lifted vector 2 beta + Z has a common
  // factor. Shifts lie in {5..9} here, so that is common.
  int ok = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const LbrResult r = lbr_recover(in, s);
    REQUIRE_FALSE(r.trace.degenerate);
    const oracle::ZVec shifted{1 + r.trace.shift[0], -3 + r.trace.shift[1]};
    const bool coprime = oracle::trial_gcd(shifted) == 1;
    CHECK((r.betaHat == beta) == coprime);
    if (coprime) {
      ++ok;
      CHECK(r.liftedBeta == IntVector{1, -3});
    }
    for (const auto& b : r.betaHat) CHECK(2 % BigInt(b.get_den()) == 0);
  }
  CHECK(ok >= 5);
}

TEST_CASE("validation") {
  LbrInput bad{{1}, {{1}}, 0, 1, 1, 1};
  CHECK_THROWS_AS(validate(bad), InputError);
  bad.nBits = 4;
  bad.qHat = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad.qHat = 1;
  bad.wHat = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad.wHat = 1;
  bad.x = {{1, 2}, {3, 4}};
  CHECK_THROWS_AS(validate(bad), InputError);
}

}
