#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levy/errors.hpp"
#include "levy/resolvent.hpp"
#include "levy/special.hpp"
#include "levy/stable.hpp"

#include <cmath>
#include <complex>

using namespace levy;
using cplx = std::complex<double>;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// c_r = 1/(1.5 sin(2 pi/3)), mpmath
constexpr double c_r_sym = 0.769800358919501019345;

} // namespace

TEST_CASE("transition density golden values")
{
  const auto bm = brownian(1.0);
  for (double t : { 0.5, 1.0, 3.0 })
    for (double x : { 0.0, 0.7, -2.0 }) {
      const auto r = transition_density(bm, t, x);
      CHECK(r.converged);
      const double expect = std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * pi * t);
      CHECK(std::abs(r.value - expect) <= 1e-9 * expect + 1e-12);
    }
  CHECK(transition_density(bm, 1.0, 0.0).value ==
        doctest::Approx(0.282094791773878143474).epsilon(1e-10));

  const auto sym = from_stable(StableParams::from_skewness(1.5, 1.0, 0.0));
  // Gamma(5/3)/pi, mpmath
  CHECK(transition_density(sym, 1.0, 0.0).value ==
        doctest::Approx(0.287352751452164445024).epsilon(1e-9));
  CHECK_THROWS_AS(transition_density(sym, 0.0, 0.0), DomainError);
}

TEST_CASE("transition density scaling and orientation")
{
  for (double beta : { 0.0, 0.5 }) {
    const StableParams p = StableParams::from_skewness(1.5, 1.0, beta);
    const auto e = from_stable(p);
    const double c_p = constants(p).c_p_closed;
    for (double t : { 0.5, 1.0, 2.0 }) {
      const double v = transition_density(e, t, 0.0).value * std::pow(t, 1.0 / 1.5);
      CHECK(rel(v, c_p) <= 1e-8);
    }
  }
  // spectrally positive: heavy right tail, negligible left tail
  const auto up = from_stable(StableParams::from_skewness(1.5, 1.0, 1.0));
  CHECK(transition_density(up, 1.0, 10.0).value > 1e-3);
  CHECK(std::abs(transition_density(up, 1.0, -10.0).value) < 1e-11);
  // total mass
  const auto skew = from_stable(StableParams::from_skewness(1.5, 1.0, 0.5));
  const auto mass = integrate_line(
    [&](double x) { return transition_density(skew, 1.0, x).value; }, { 0.0 },
    outer_spec(QuadratureSpec{}));
  CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("resolvent density golden values")
{
  const auto bm = brownian(1.0);
  for (double q : { 0.5, 1.0, 4.0 })
    for (double x : { 0.0, 0.3, -1.5 }) {
      const auto r = resolvent_density(bm, q, x);
      CHECK(r.converged);
      const double expect = std::exp(-std::sqrt(q) * std::abs(x)) / (2.0 * std::sqrt(q));
      CHECK(std::abs(r.value - expect) <= 1e-8 * expect);
    }
  CHECK(resolvent_density(bm, 1.0, 0.0).value == doctest::Approx(0.5).epsilon(1e-10));

  const auto sym = from_stable(StableParams::from_skewness(1.5, 1.0, 0.0));
  CHECK(rel(resolvent_density(sym, 1.0, 0.0).value, c_r_sym) <= 1e-8);
  CHECK_THROWS_AS(resolvent_density(sym, 0.0, 1.0), DomainError);
}

TEST_CASE("resolvent scaling laws")
{
  for (double beta : { 0.0, 0.5, -1.0 }) {
    const StableParams p = StableParams::from_skewness(1.5, 1.0, beta);
    const auto e = from_stable(p);
    const double c_r = constants(p).c_r_closed;
    for (double q : { 0.1, 1.0, 10.0 }) {
      const double v = resolvent_density(e, q, 0.0).value * std::pow(q, 1.0 - 1.0 / 1.5);
      CHECK(rel(v, c_r) <= 1e-8);
    }
  }
}

TEST_CASE("resolvent properties")
{
  const auto sym = from_stable(StableParams::from_skewness(1.3, 1.0, 0.0));
  const double r0 = resolvent_density(sym, 1.0, 0.0).value;
  for (double x : { -3.0, -0.2, 0.1, 1.0, 10.0 })
    CHECK(resolvent_density(sym, 1.0, x).value <= r0);

  // q r_q(0) decreases to 0 like q^(1/alpha)
  const auto skew = from_stable(StableParams::from_skewness(1.5, 1.0, 0.5));
  double prev = INFINITY;
  std::vector<double> lx, ly;
  for (double q = 1.0; q >= 1e-5; q /= 10.0) {
    const double v = q * resolvent_density(skew, q, 0.0).value;
    CHECK(v < prev);
    prev = v;
    lx.push_back(std::log(q));
    ly.push_back(std::log(v));
  }
  const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
  CHECK(slope == doctest::Approx(1.0 / 1.5).epsilon(1e-6));

  // total mass of the resolvent is 1/q
  const auto mass = integrate_line(
    [&](double x) { return resolvent_density(skew, 2.0, x).value; }, { 0.0 },
    outer_spec(QuadratureSpec{}));
  CHECK(mass.value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("Laplace transform of p_t(0) is r_q(0)")
{
  const auto sym = from_stable(StableParams::from_skewness(1.5, 1.0, 0.0));
  const auto lt = integrate(
    [&](double t) { return std::exp(-t) * transition_density(sym, t, 0.0).value; },
    outer_spec(QuadratureSpec{}));
  CHECK(rel(lt.value, c_r_sym) <= 1e-6);
}

TEST_CASE("complex resolvent at zero")
{
  const auto skew = from_stable(StableParams::from_skewness(1.5, 1.0, 0.5));
  for (double q : { 0.3, 1.0, 5.0 }) {
    const auto c = resolvent_zero_complex(skew, cplx(q, 0.0));
    CHECK(std::abs(c.value.imag()) <= 1e-14);
    CHECK(std::abs(c.value.real() - resolvent_density(skew, q, 0.0).value) <= 1e-10);
  }
  const cplx z(1.0, 2.0);
  const auto a = resolvent_zero_complex(skew, z);
  const auto b = resolvent_zero_complex(skew, std::conj(z));
  CHECK(std::abs(a.value - std::conj(b.value)) <= 1e-12);
  CHECK_THROWS_AS(resolvent_zero_complex(skew, cplx(0.0, 1.0)), DomainError);

  // analytic continuation of c_r q^(1/alpha - 1)
  const double c_r = constants(StableParams::from_skewness(1.5, 1.0, 0.5)).c_r_closed;
  for (const cplx w : { cplx(1.0, 3.0), cplx(0.5, -7.0), cplx(2.0, 40.0) }) {
    const cplx expect = c_r * std::pow(w, 1.0 / 1.5 - 1.0);
    CHECK(std::abs(resolvent_zero_complex(skew, w).value - expect) <= 1e-9 * std::abs(expect));
  }

  // |r_{1+ix}(0)| >= c3 (1 + |x|)^(1/alpha - 1)
  const auto sym = from_stable(StableParams::from_skewness(1.5, 1.0, 0.0));
  double c3 = INFINITY;
  for (double x : { 0.0, 5.0, 25.0 })
    c3 = std::min(c3, std::abs(resolvent_zero_complex(sym, cplx(1.0, x)).value) /
                        std::pow(1.0 + x, 1.0 / 1.5 - 1.0));
  CHECK(c3 > 0.1);
}

TEST_CASE("z derivatives")
{
  const auto bm = brownian(1.0);
  CHECK(std::abs(resolvent_zero_dz(bm, 1.0).value - cplx(-0.25, 0.0)) <= 1e-10);
  CHECK(std::abs(resolvent_zero_dz2(bm, 1.0).value - cplx(0.375, 0.0)) <= 1e-10);

  const auto skew = from_stable(StableParams::from_skewness(1.5, 1.0, 0.5));
  const cplx z(1.0, 1.0);
  const double h = 1e-4;
  const cplx fd1 = (resolvent_zero_complex(skew, z + h).value -
                    resolvent_zero_complex(skew, z - h).value) /
                   (2.0 * h);
  CHECK(std::abs(resolvent_zero_dz(skew, z).value - fd1) <= 1e-6);
  const cplx fd2 =
    (resolvent_zero_dz(skew, z + h).value - resolvent_zero_dz(skew, z - h).value) / (2.0 * h);
  CHECK(std::abs(resolvent_zero_dz2(skew, z).value - fd2) <= 1e-6);
  CHECK(std::abs(resolvent_zero_dz2(skew, cplx(2.0, 0.0)).value.imag()) <= 1e-14);

  // closed form derivatives of c_r z^(1/alpha - 1)
  const double c_r = constants(StableParams::from_skewness(1.5, 1.0, 0.5)).c_r_closed;
  const double s = 1.0 / 1.5 - 1.0;
  const cplx w(1.0, 4.0);
  const auto jet = resolvent_zero_jet(skew, w);
  CHECK(jet.converged);
  CHECK(std::abs(jet.dr - c_r * s * std::pow(w, s - 1.0)) <= 1e-9 * std::abs(jet.dr));
  CHECK(std::abs(jet.d2r - c_r * s * (s - 1.0) * std::pow(w, s - 2.0)) <= 1e-9 * std::abs(jet.d2r));
}

TEST_CASE("resolvent equation")
{
  const auto bm = brownian(1.0);
  const auto r = resolvent_equation_residual(bm, 2.0, 1.0, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value <= 1e-6);
  const auto skew = from_stable(StableParams::from_skewness(1.5, 1.0, 0.5));
  const auto s = resolvent_equation_residual(skew, 2.0, 1.0, 0.5, -0.5);
  CHECK(s.value <= 1e-4);
  CHECK_THROWS_AS(resolvent_equation_residual(skew, 1.0, 1.0, 0.0, 0.0), DomainError);
}
