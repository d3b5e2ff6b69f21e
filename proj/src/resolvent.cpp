#include "levy/resolvent.hpp"

#include "levy/errors.hpp"
#include "levy/special.hpp"
#include "scaling.hpp"

#include <algorithm>
#include <cmath>

namespace levy {

namespace {

using cplx = std::complex<double>;
using detail::frequency_scaled;
using detail::merge;

ComplexQuadratureResult scaled(ComplexQuadratureResult r, double factor)
{
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

void require_right_half_plane(cplx z)
{
  if (!(z.real() > 0.0))
    throw DomainError("complex resolvent needs Re z > 0");
}

} // namespace

QuadratureSpec outer_spec(const QuadratureSpec& spec)
{
  return spec.with_tolerances(100.0 * spec.rel_tol, 100.0 * spec.abs_tol);
}

QuadratureResult transition_density(const LevyExponent& exp, double t, double x,
                                    const QuadratureSpec& spec)
{
  if (!(t > 0.0))
    throw DomainError("transition density needs t > 0");
  spec.validate();
  const QuadratureSpec s = frequency_scaled(spec, exp, 1.0 / t);
  const auto even = integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      return std::exp(-t * v.theta) * std::cos(t * v.omega);
    },
    Kernel::cos, x, s);
  if (exp.symmetric())
    return merge(even, QuadratureResult{ 0.0, 0.0, true, 0, 0.0 }, 1.0, 1.0 / pi, &spec);
  const auto odd = integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      return std::exp(-t * v.theta) * std::sin(t * v.omega);
    },
    Kernel::sin, x, s);
  return merge(even, odd, -1.0, 1.0 / pi, &spec);
}

QuadratureResult resolvent_density(const LevyExponent& exp, double q, double x,
                                   const QuadratureSpec& spec)
{
  if (!(q > 0.0))
    throw DomainError("resolvent density needs q > 0");
  spec.validate();
  const QuadratureSpec s = frequency_scaled(spec, exp, q);
  const auto even = integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      const double u = q + v.theta;
      const double w = v.omega / u;
      return 1.0 / (u * (1.0 + w * w));
    },
    Kernel::cos, x, s);
  if (exp.symmetric())
    return merge(even, QuadratureResult{ 0.0, 0.0, true, 0, 0.0 }, 1.0, 1.0 / pi, &spec);
  const auto odd = integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      const double u = q + v.theta;
      const double w = v.omega / u;
      return w / (u * (1.0 + w * w));
    },
    Kernel::sin, x, s);
  return merge(even, odd, -1.0, 1.0 / pi, &spec);
}

ComplexQuadratureResult resolvent_zero_complex(const LevyExponent& exp, cplx z,
                                               const QuadratureSpec& spec)
{
  require_right_half_plane(z);
  spec.validate();
  const QuadratureSpec s = frequency_scaled(spec, exp, std::abs(z));
  return scaled(integrate_complex(
                  [&](double l) {
                    const ThetaOmega v = exp.eval(l);
                    const cplx u = z + v.theta;
                    const cplx w = v.omega / u;
                    return 1.0 / (u * (1.0 + w * w));
                  },
                  s),
                1.0 / pi);
}

ComplexQuadratureResult resolvent_zero_dz(const LevyExponent& exp, cplx z,
                                          const QuadratureSpec& spec)
{
  require_right_half_plane(z);
  spec.validate();
  const QuadratureSpec s = frequency_scaled(spec, exp, std::abs(z));
  return scaled(integrate_complex(
                  [&](double l) {
                    const ThetaOmega v = exp.eval(l);
                    const cplx u = z + v.theta;
                    const cplx w = v.omega / u;
                    const cplx d = 1.0 + w * w;
                    return (w * w - 1.0) / (u * u * d * d);
                  },
                  s),
                1.0 / pi);
}

ComplexQuadratureResult resolvent_zero_dz2(const LevyExponent& exp, cplx z,
                                           const QuadratureSpec& spec)
{
  require_right_half_plane(z);
  spec.validate();
  const QuadratureSpec s = frequency_scaled(spec, exp, std::abs(z));
  return scaled(integrate_complex(
                  [&](double l) {
                    const ThetaOmega v = exp.eval(l);
                    const cplx u = z + v.theta;
                    const cplx w = v.omega / u;
                    const cplx d = 1.0 + w * w;
                    return 2.0 * (1.0 - 3.0 * w * w) / (u * u * u * d * d * d);
                  },
                  s),
                1.0 / pi);
}

ResolventJet resolvent_zero_jet(const LevyExponent& exp, cplx z, const QuadratureSpec& spec)
{
  const auto r0 = resolvent_zero_complex(exp, z, spec);
  const auto r1 = resolvent_zero_dz(exp, z, spec);
  const auto r2 = resolvent_zero_dz2(exp, z, spec);
  ResolventJet j;
  j.r = r0.value;
  j.dr = r1.value;
  j.d2r = r2.value;
  j.error_r = r0.error_estimate;
  j.error_dr = r1.error_estimate;
  j.error_d2r = r2.error_estimate;
  j.error = j.error_r + j.error_dr + j.error_d2r;
  j.converged = r0.converged && r1.converged && r2.converged;
  return j;
}

QuadratureResult resolvent_equation_residual(const LevyExponent& exp, double q, double p, double x,
                                             double z, const QuadratureSpec& spec)
{
  if (!(q > 0.0) || !(p > 0.0))
    throw DomainError("resolvent equation needs q, p > 0");
  if (q == p)
    throw DomainError("resolvent equation needs q != p");
  spec.validate();

  bool inner_ok = true;
  const QuadratureSpec outer = outer_spec(spec);
  const auto conv = integrate_line(
    [&](double y) {
      const auto a = resolvent_density(exp, q, y - x, spec);
      const auto b = resolvent_density(exp, p, z - y, spec);
      inner_ok = inner_ok && meets(a, outer) && meets(b, outer);
      return a.value * b.value;
    },
    { x, z }, outer);
  const auto rq = resolvent_density(exp, q, z - x, spec);
  const auto rp = resolvent_density(exp, p, z - x, spec);

  QuadratureResult r;
  const double lhs = rq.value - rp.value + (q - p) * conv.value;
  r.value = std::abs(lhs);
  r.error_estimate = rq.error_estimate + rp.error_estimate +
                     std::abs(q - p) * (conv.error_estimate + spec.rel_tol * std::abs(conv.value));
  r.converged = conv.converged && inner_ok && rq.converged && rp.converged;
  r.subdivisions_used = conv.subdivisions_used;
  r.truncation_point = conv.truncation_point;
  return r;
}

} // namespace levy
