#include "levy/stable.hpp"

#include "levy/errors.hpp"
#include "levy/special.hpp"

#include <cmath>
#include <complex>

namespace levy {

namespace {

double s_alpha(double a) { return 2.0 * gamma(a) * std::sin(pi * a / 2.0); }

double tan_factor(double a) { return -std::tan(pi * a / 2.0); }

double require(const QuadratureResult& r, const char* what)
{
  if (!r.converged)
    throw NumericFailure(std::string(what) + " did not converge");
  return r.value;
}

// Re[(c_theta + i c_omega)^(-1/alpha)]
double re_root(const StableParams& p)
{
  const std::complex<double> c(p.c_theta(), p.c_omega());
  return std::pow(c, -1.0 / p.alpha).real();
}

double c_r_closed(const StableParams& p)
{
  return re_root(p) / (p.alpha * std::sin(pi / p.alpha));
}

} // namespace

StableParams StableParams::from_skewness(double alpha, double c_theta, double beta)
{
  if (!(alpha > 1.0 && alpha < 2.0))
    throw InvalidParameter("stable index alpha must lie in (1, 2)");
  if (!(c_theta > 0.0))
    throw InvalidParameter("c_theta must be positive");
  if (!(beta >= -1.0 && beta <= 1.0))
    throw InvalidParameter("skewness beta must lie in [-1, 1]");
  const double total = c_theta * alpha * s_alpha(alpha) / pi;
  return { alpha, 0.5 * total * (1.0 + beta), 0.5 * total * (1.0 - beta) };
}

double StableParams::beta() const { return (c_plus - c_minus) / (c_plus + c_minus); }

double StableParams::c_theta() const
{
  return (c_plus + c_minus) * pi / (alpha * s_alpha(alpha));
}

double StableParams::c_omega() const { return c_theta() * beta() * tan_factor(alpha); }

void StableParams::validate() const
{
  if (!(alpha > 1.0 && alpha < 2.0))
    throw InvalidParameter("stable index alpha must lie in (1, 2)");
  if (!(c_plus >= 0.0) || !(c_minus >= 0.0))
    throw InvalidParameter("stable coefficients c+ and c- must be nonnegative");
  if (!(c_plus + c_minus > 0.0) || !std::isfinite(c_plus + c_minus))
    throw InvalidParameter("stable coefficients need c+ + c- > 0");
}

StableConstants constants(const StableParams& params, const QuadratureSpec& spec)
{
  params.validate();
  const double a = params.alpha;
  StableConstants k;
  k.alpha = a;
  k.c_theta = params.c_theta();
  k.beta = params.beta();
  k.s_alpha = s_alpha(a);
  k.c_port = 2.0 * gamma(a) * -std::cos(pi * a / 2.0);
  k.c_int = pi / k.c_port;
  k.c_int_plus = pi / (a * k.s_alpha);
  k.c_omega = params.c_omega();
  k.tan_factor = tan_factor(a);

  const double ct = k.c_theta;
  const double cw = k.c_omega;
  k.c_p = require(integrate(
                    [=](double l) {
                      const double la = std::pow(l, a);
                      return std::cos(cw * la) * std::exp(-ct * la);
                    },
                    spec),
                  "c_p") /
          pi;
  k.c_r = require(integrate(
                    [=](double l) {
                      const double la = std::pow(l, a);
                      const double u = 1.0 + ct * la;
                      const double w = cw * la / u;
                      return 1.0 / (u * (1.0 + w * w));
                    },
                    spec),
                  "c_r") /
          pi;
  k.c_p_closed = re_root(params) * gamma(1.0 + 1.0 / a) / pi;
  k.c_r_closed = c_r_closed(params);
  k.c_one_sided = 2.0 / (ct * (1.0 + k.tan_factor * k.tan_factor) * k.c_port);
  return k;
}

double h0_closed(const StableParams& params, double x)
{
  params.validate();
  if (x == 0.0)
    return 0.0;
  const double a = params.alpha;
  const double beta = params.beta();
  const double t = tan_factor(a);
  const double c_port = 2.0 * gamma(a) * -std::cos(pi * a / 2.0);
  const double sign = x > 0.0 ? 1.0 : -1.0;
  const double skew = 1.0 - beta * sign;
  if (skew <= 0.0)
    return 0.0;
  return skew * std::pow(std::abs(x), a - 1.0) /
         (params.c_theta() * (1.0 + beta * beta * t * t) * c_port);
}

double rho_closed(const StableParams& params, double t)
{
  params.validate();
  if (!(t > 0.0))
    throw DomainError("duration density needs t > 0");
  const double a = params.alpha;
  return (1.0 - 1.0 / a) / (c_r_closed(params) * gamma(1.0 / a)) * std::pow(t, 1.0 / a - 2.0);
}

double survival_closed(const StableParams& params, double t)
{
  params.validate();
  if (!(t > 0.0))
    throw DomainError("survival function needs t > 0");
  const double a = params.alpha;
  return std::pow(t, 1.0 / a - 1.0) / (c_r_closed(params) * gamma(1.0 / a));
}

IdentityCheck entrance_law_identity_check(const StableParams& params, double q,
                                          const QuadratureSpec& spec)
{
  params.validate();
  if (!(q > 0.0))
    throw DomainError("entrance-law identity needs q > 0");
  QuadratureSpec s = spec;
  s.characteristic_scale = 1.0 / q;
  const auto lhs = integrate(
    [&](double t) { return std::exp(-q * t) * survival_closed(params, t); }, s);
  const StableConstants k = constants(params, spec);
  IdentityCheck c;
  c.lhs = lhs.value;
  c.rhs = std::pow(q, -1.0 / params.alpha) / k.c_r;
  c.residual = std::abs(c.lhs - c.rhs);
  c.converged = lhs.converged;
  return c;
}

} // namespace levy
