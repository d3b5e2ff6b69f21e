#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levy/errors.hpp"
#include "levy/exponent.hpp"
#include "levy/special.hpp"
#include "levy/stable.hpp"

#include <cmath>

using namespace levy;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("from_stable values")
{
  const auto sym = from_stable(StableParams::from_skewness(1.5, 1.0, 0.0));
  CHECK(sym.theta(2.0) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));
  CHECK(sym.omega(2.0) == 0.0);
  CHECK(sym.symmetric());

  const auto skew = from_stable(StableParams::from_skewness(1.5, 1.0, 0.5));
  CHECK(skew.omega(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(skew.theta(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*skew.alpha_hint() == 1.5);

  // mpmath: pi / (1.5 S_1.5)
  const StableParams p{ 1.5, 0.5, 0.5 };
  CHECK(p.c_theta() == doctest::Approx(1.67108551642066700161).epsilon(1e-14));
  CHECK(from_stable(p).theta(1.0) == doctest::Approx(1.67108551642066700161).epsilon(1e-14));
}

TEST_CASE("from_stable rejects bad parameters")
{
  CHECK_THROWS_AS(from_stable(StableParams{ 2.0, 0.5, 0.5 }), InvalidParameter);
  CHECK_THROWS_AS(from_stable(StableParams{ 1.0, 0.5, 0.5 }), InvalidParameter);
  CHECK_THROWS_AS(from_stable(StableParams{ 1.5, -0.1, 0.5 }), InvalidParameter);
  CHECK_THROWS_AS(from_stable(StableParams{ 1.5, 0.0, 0.0 }), InvalidParameter);
  CHECK_THROWS_AS(StableParams::from_skewness(1.5, 1.0, 1.5), InvalidParameter);
}

TEST_CASE("eval applies parity")
{
  const auto skew = from_stable(StableParams::from_skewness(1.5, 1.0, 0.5));
  const auto v = skew.eval(-1.0);
  CHECK(v.theta == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v.omega == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(skew.eval(0.0).theta == 0.0);
  CHECK(skew.eval(0.0).omega == 0.0);
  const auto bm = brownian(1.0);
  CHECK(bm.eval(3.0).theta == 9.0);
  CHECK(bm.eval(3.0).omega == 0.0);
  CHECK(bm.eval(0.0).theta == 0.0);
  for (double l : { 0.01, 0.7, 3.0, 1e4 }) {
    CHECK(skew.eval(-l).theta == skew.eval(l).theta);
    CHECK(skew.eval(-l).omega == -skew.eval(l).omega);
    CHECK(skew.theta_prime(-l) == -skew.theta_prime(l));
    CHECK(skew.omega_prime(-l) == skew.omega_prime(l));
  }
}

TEST_CASE("stable scaling")
{
  for (double a : { 1.2, 1.5, 1.8 })
    for (double beta : { -0.5, 0.0, 0.5 }) {
      const auto e = from_stable(StableParams::from_skewness(a, 1.3, beta));
      for (double l : { 0.1, 1.0, 10.0 })
        for (double c : { 0.5, 3.0 }) {
          CHECK(rel(e.theta(c * l), std::pow(c, a) * e.theta(l)) <= 1e-12);
          if (beta != 0.0)
            CHECK(rel(e.omega(c * l), std::pow(c, a) * e.omega(l)) <= 1e-12);
        }
    }
}

TEST_CASE("invariants of the built-in families")
{
  CHECK(check_invariants(from_stable(StableParams::from_skewness(1.5, 1.0, 0.5))).ok());
  CHECK(check_invariants(from_stable(StableParams::from_skewness(1.1, 2.0, -1.0))).ok());
  CHECK(check_invariants(brownian(0.5)).ok());

  LevyExponent::Parts bad;
  bad.theta = [](double l) { return -l; };
  bad.omega = [](double) { return 0.0; };
  const auto c = check_invariants(LevyExponent(bad));
  CHECK_FALSE(c.nonnegative);
  CHECK_FALSE(c.ok());

  LevyExponent::Parts wrong;
  wrong.theta = [](double l) { return l * l; };
  wrong.omega = [](double) { return 0.0; };
  wrong.theta_prime = [](double l) { return 3.0 * l; };
  wrong.omega_prime = [](double) { return 0.0; };
  CHECK_FALSE(check_invariants(LevyExponent(wrong)).derivatives_consistent);

  LevyExponent::Parts killed;
  killed.theta = [](double l) { return 1.0 + l * l; };
  killed.omega = [](double) { return 0.0; };
  CHECK_FALSE(check_invariants(LevyExponent(killed)).vanishes_at_zero);
}

TEST_CASE("growth exponent")
{
  CHECK(from_stable(StableParams::from_skewness(1.7, 1.0, 0.2)).growth_exponent() == 1.7);
  LevyExponent::Parts p;
  p.theta = [](double l) { return std::pow(l, 1.3) + l; };
  p.omega = [](double) { return 0.0; };
  CHECK(LevyExponent(p).growth_exponent() == doctest::Approx(1.3).epsilon(0.02));
}

TEST_CASE("from_triplet reproduces Brownian")
{
  LevyTriplet t;
  t.v = 1.0;
  const auto e = from_triplet(t);
  CHECK(e.theta(2.0) == 4.0);
  CHECK(e.omega(2.0) == 0.0);
  CHECK(e.symmetric());
}

TEST_CASE("from_triplet agrees with from_stable")
{
  struct Case
  {
    double alpha, cp, cm;
  };
  for (const Case c : { Case{ 1.5, 0.5, 0.5 }, Case{ 1.5, 1.0, 0.0 }, Case{ 1.3, 0.2, 0.7 },
                        Case{ 1.8, 0.9, 0.3 } }) {
    const StableParams p{ c.alpha, c.cp, c.cm };
    const auto exact = from_stable(p);
    const auto numeric = from_triplet(stable_triplet(c.alpha, c.cp, c.cm));
    CHECK(numeric.has_derivatives());
    for (double l : { 0.1, 1.0, 10.0 }) {
      CHECK(rel(numeric.theta(l), exact.theta(l)) <= 1e-6);
      if (c.cp != c.cm)
        CHECK(rel(numeric.omega(l), exact.omega(l)) <= 1e-6);
      else
        CHECK(std::abs(numeric.omega(l)) <= 1e-8 * exact.theta(l));
      CHECK(rel(numeric.theta_prime(l), exact.theta_prime(l)) <= 1e-6);
      if (c.cp != c.cm)
        CHECK(rel(numeric.omega_prime(l), exact.omega_prime(l)) <= 1e-6);
    }
  }
  // one-sided: omega/theta = -tan(3 pi/4) = 1
  const auto one = from_triplet(stable_triplet(1.5, 1.0, 0.0));
  CHECK(one.omega(1.0) / one.theta(1.0) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("from_triplet with an exponential density")
{
  // nu(dx) = e^-|x|/2 dx on both sides: theta = lambda^2 / (1 + lambda^2)
  LevyTriplet t;
  t.positive = exponential_density(0.5, 1.0);
  t.negative = exponential_density(0.5, 1.0);
  const auto e = from_triplet(t);
  CHECK_FALSE(e.has_derivatives());
  for (double l : { 0.3, 1.0, 4.0 }) {
    CHECK(rel(e.theta(l), l * l / (1.0 + l * l)) <= 1e-8);
    CHECK(std::abs(e.omega(l)) <= 1e-10);
  }
}

TEST_CASE("triplet validation")
{
  LevyTriplet t;
  t.v = -1.0;
  CHECK_THROWS_AS(t.validate(), InvalidParameter);
  t.v = 0.0;
  t.positive.density = [](double u) { return std::pow(u, -3.5); };
  t.positive.at_zero = 3.5;
  t.positive.at_infinity = 3.5;
  CHECK_THROWS_AS(t.validate(), InvalidParameter);
  t.positive.density = [](double u) { return -std::exp(-u); };
  t.positive.at_zero = 0.0;
  t.positive.at_infinity = 10.0;
  CHECK_THROWS_AS(t.validate(), InvalidParameter);
  t.positive.density = [](double u) { return 1.0 / (1.0 + u); };
  t.positive.at_infinity = 1.0;
  CHECK_THROWS_AS(t.validate(), InvalidParameter);
}
