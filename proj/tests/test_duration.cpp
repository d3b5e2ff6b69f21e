#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levy/duration.hpp"
#include "levy/errors.hpp"
#include "levy/resolvent.hpp"

#include <cmath>

using namespace levy;

namespace {

StableParams params(double beta) { return StableParams::from_skewness(1.5, 1.0, beta); }

} // namespace

TEST_CASE("phi is Hermitian")
{
  const auto e = from_stable(params(0.5));
  const auto a = phi(e, 3.0).value;
  const auto b = phi(e, -3.0).value;
  CHECK(std::abs(b - std::conj(a)) <= 1e-10);
}

TEST_CASE("phi on the real axis")
{
  const auto e = from_stable(params(0.5));
  const auto v = phi(e, 0.0);
  CHECK(v.converged);
  CHECK(std::abs(v.value.imag()) <= 1e-14);
  const auto j = resolvent_zero_jet(e, { 1.0, 0.0 });
  const double r = j.r.real();
  const double expected = j.d2r.real() / (r * r) - 2.0 * j.dr.real() * j.dr.real() / (r * r * r);
  CHECK(v.value.real() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("phi against the stable closed form")
{
  for (double beta : { -0.5, 0.0, 0.5, 1.0 }) {
    const auto p = params(beta);
    const auto e = from_stable(p);
    for (double x : { 0.0, 0.5, 3.0, 100.0, 1e4 }) {
      const auto v = phi(e, x).value;
      CHECK(std::abs(v / phi_closed(p, x) - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("phi decay bound")
{
  const auto e = from_stable(params(0.5));
  const double p = 1.0 + 1.0 / 1.5;
  double lo = 1e300, hi = 0.0;
  for (double x : { 1.0, 10.0, 100.0 }) {
    const double scaled = std::abs(phi(e, x).value) * std::pow(1.0 + x, p);
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  CHECK(hi / lo < 2.0);

  const PhiProfile prof(e);
  CHECK(prof.converged());
  CHECK(prof.decay_fit() >= p - 0.1);
  CHECK(prof.tail_exponent() == doctest::Approx(p).epsilon(1e-3));
  CHECK(prof.interpolation_error() <= 1e-6);
  CHECK(std::abs(prof(-7.0) - std::conj(prof(7.0))) == 0.0);
}

TEST_CASE("duration density against the stable closed form")
{
  for (double beta : { 0.0, 0.5 }) {
    const auto p = params(beta);
    const PhiProfile prof(from_stable(p));
    for (double t : { 0.5, 1.0, 2.0 }) {
      const auto r = duration_density(prof, t);
      CHECK(r.converged);
      CHECK_FALSE(r.negative);
      CHECK(std::abs(r.value / rho_closed(p, t) - 1.0) <= 1e-3);
    }
  }
  // rho_closed at beta = 0, t = 1 (mpmath: 1/(3 c_r Gamma(2/3)))
  const auto r = duration_density(from_stable(params(0.0)), 1.0);
  CHECK(r.value == doctest::Approx(0.319774732528572789333).epsilon(1e-6));
  CHECK_THROWS_AS(duration_density(from_stable(params(0.0)), 0.0), DomainError);
}

TEST_CASE("duration density power law")
{
  const PhiProfile prof(from_stable(params(0.5)));
  const double a = duration_density(prof, 0.5).value * std::pow(0.5, 2.0 - 1.0 / 1.5);
  const double b = duration_density(prof, 2.0).value * std::pow(2.0, 2.0 - 1.0 / 1.5);
  CHECK(std::abs(a / b - 1.0) <= 1e-2);
}

TEST_CASE("kappa vanishes for recurrent processes")
{
  const auto k = kappa(from_stable(params(0.5)));
  CHECK(k.stable);
  CHECK(std::abs(k.value) <= 1e-3);
  CHECK(k.exponent == doctest::Approx(1.0 - 1.0 / 1.5).epsilon(1e-3));

  const auto b = kappa(brownian(1.0));
  CHECK(b.stable);
  CHECK(std::abs(b.value) <= 1e-3);
  CHECK(b.exponent == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("kappa refuses killed exponents")
{
  LevyExponent::Parts parts;
  parts.theta = [](double l) { return l * l + 1.0; };
  parts.omega = [](double) { return 0.0; };
  parts.symmetric = true;
  parts.alpha_hint = 2.0;
  parts.label = "killed brownian";
  const auto k = kappa(LevyExponent(parts));
  CHECK_FALSE(k.stable);
  CHECK(k.diagnostic.find("extrapolation unstable") == 0);
}

TEST_CASE("entrance law identity")
{
  {
    const auto p = params(0.0);
    const auto e = from_stable(p);
    const auto c = survival_transform_check(e, 1.0);
    CHECK(c.converged);
    // RHS = q^(-1/alpha) / c_r at q = 1
    CHECK(c.rhs == doctest::Approx(1.0 / 0.769800358919501019345).epsilon(1e-8));
    CHECK(c.residual <= 1e-2 / 0.769800358919501019345);
  }
  {
    const auto e = from_stable(params(0.5));
    const auto c = survival_transform_check(e, 2.0);
    CHECK(c.converged);
    CHECK(c.residual / c.rhs <= 1e-2);
    CHECK(c.head_exponent == doctest::Approx(1.0 / 1.5 - 2.0).epsilon(1e-3));
  }
  CHECK_THROWS_AS(survival_transform_check(from_stable(params(0.0)), 0.0), DomainError);
}

TEST_CASE("entrance law transform grows like q^(-1/alpha)")
{
  const auto e = from_stable(params(0.0));
  const PhiProfile prof(e);
  const auto a = survival_transform_check(e, prof, 0.1);
  const auto b = survival_transform_check(e, prof, 0.01);
  CHECK(b.lhs > a.lhs);
  CHECK(std::log(b.lhs / a.lhs) / std::log(10.0) == doctest::Approx(1.0 / 1.5).epsilon(1e-2));
}
