#include "levy/duration.hpp"

#include "levy/errors.hpp"
#include "levy/parallel.hpp"
#include "levy/resolvent.hpp"
#include "levy/special.hpp"

#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <memory>

namespace levy {

namespace {

using cplx = std::complex<double>;

// least-squares slope of ys against xs
double slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double require_positive_t(double t)
{
  if (!(t > 0.0))
    throw DomainError("duration density needs t > 0");
  return t;
}

} // namespace

PhiValue phi(const LevyExponent& exp, double x, const QuadratureSpec& spec)
{
  // r_z(0) and its derivatives shrink with |z|; keep the absolute floor below them
  const QuadratureSpec s = spec.with_tolerances(spec.rel_tol, spec.abs_tol / (1.0 + x * x));
  const auto j = resolvent_zero_jet(exp, cplx(1.0, x), s);
  const cplx r = j.r;
  PhiValue out;
  out.value = j.d2r / (r * r) - 2.0 * j.dr * j.dr / (r * r * r);
  // first-order propagation of the three quadrature errors
  const double ar = std::abs(r);
  out.error = j.error_d2r / (ar * ar) + j.error_dr * 4.0 * std::abs(j.dr) / (ar * ar * ar) +
              j.error_r * (2.0 * std::abs(j.d2r) / (ar * ar * ar) +
                           6.0 * std::norm(j.dr) / (ar * ar * ar * ar));
  out.converged = j.converged;
  return out;
}

std::complex<double> phi_closed(const StableParams& params, double x)
{
  const double a = params.alpha;
  const double c_r = constants(params).c_r_closed;
  return (1.0 - 1.0 / a) / a * std::pow(cplx(1.0, x), -1.0 - 1.0 / a) / c_r;
}

PhiProfile::PhiProfile(const LevyExponent& exp, const QuadratureSpec& spec, Options options)
{
  if (!(options.x_max > 1e3) || options.points < 16)
    throw InvalidParameter("phi profile needs x_max > 1e3 and at least 16 points");
  spec.validate();
  const int n = options.points;
  x_max_ = options.x_max;
  u_max_ = std::log1p(x_max_);
  const double h = u_max_ / (n - 1);

  xs_.resize(n);
  values_.resize(n);
  std::vector<double> errors(n);
  std::vector<char> ok(n, 1);
  for (int i = 0; i < n; ++i)
    xs_[i] = i == n - 1 ? x_max_ : std::expm1(i * h);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const auto v = phi(exp, xs_[i], spec);
    values_[i] = v.value;
    errors[i] = std::abs(v.value) > 0.0 ? v.error / std::abs(v.value) : v.error;
    ok[i] = v.converged ? 1 : 0;
  });
  converged_ = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  sample_error_ = *std::max_element(errors.begin(), errors.end());

  std::vector<double> lx, ly, tx, ty;
  for (int i = 0; i < n; ++i) {
    const double lg = std::log1p(xs_[i]);
    if (xs_[i] >= 1.0 && xs_[i] <= 1e3) {
      lx.push_back(lg);
      ly.push_back(std::log(std::abs(values_[i])));
    }
    if (xs_[i] >= x_max_ / 10.0) {
      tx.push_back(lg);
      ty.push_back(std::log(std::abs(values_[i])));
    }
  }
  decay_fit_ = -slope(lx, ly);
  tail_exponent_ = -slope(tx, ty);
  tail_amplitude_ = values_.back() * std::pow(cplx(1.0, x_max_), tail_exponent_);

  // splines of phi (1 + x)^p in u = log(1 + x); p keeps them O(1)
  const double p = decay_fit_;
  std::vector<double> re(n), im(n);
  for (int i = 0; i < n; ++i) {
    const double w = std::pow(1.0 + xs_[i], p);
    re[i] = values_[i].real() * w;
    im[i] = values_[i].imag() * w;
  }
  using Spline = boost::math::interpolators::cardinal_quintic_b_spline<double>;
  auto sre = std::make_shared<Spline>(re, 0.0, h);
  auto sim = std::make_shared<Spline>(im, 0.0, h);
  spline_re_ = [sre](double u) { return (*sre)(u); };
  spline_im_ = [sim](double u) { return (*sim)(u); };

  // spline error at midpoints spread over the grid
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const int i = (k * (n - 2)) / 7;
    const double x = std::expm1((i + 0.5) * h);
    const auto v = phi(exp, x, spec);
    worst = std::max(worst, std::abs((*this)(x) - v.value) / std::abs(v.value));
  }
  interpolation_error_ = worst;
}

std::complex<double> PhiProfile::operator()(double x) const
{
  if (x < 0.0)
    return std::conj((*this)(-x));
  if (x >= x_max_)
    return tail_amplitude_ * std::pow(cplx(1.0, x), -tail_exponent_);
  const double u = std::log1p(x);
  const double w = std::pow(1.0 + x, -decay_fit_);
  return cplx(spline_re_(u) * w, spline_im_(u) * w);
}

DensityResult duration_density(const PhiProfile& profile, double t, const QuadratureSpec& spec)
{
  require_positive_t(t);
  spec.validate();
  QuadratureSpec s = spec;
  s.characteristic_scale = 1.0;
  const auto even = integrate_oscillatory([&](double x) { return profile(x).real(); },
                                          Kernel::cos, t, s);
  const auto odd = integrate_oscillatory([&](double x) { return profile(x).imag(); },
                                         Kernel::sin, t, s);
  const double factor = std::exp(t) / (pi * t * t);
  // int |phi| bounds the effect of relative errors in phi
  const double mass = integrate([&](double x) { return std::abs(profile(x)); }, s).value;
  const double data_error = (profile.interpolation_error() + profile.sample_error()) * mass;
  const double quad_error = even.error_estimate + odd.error_estimate;
  const double integral = even.value - odd.value;
  DensityResult r;
  r.value = factor * integral;
  r.error_estimate = factor * (quad_error + data_error);
  // the quadrature only has to resolve phi as well as phi is known
  r.converged = quad_error <= std::max({ s.abs_tol, s.rel_tol * std::abs(integral), data_error }) &&
                std::isfinite(quad_error) && profile.converged();
  r.negative = r.value < -r.error_estimate;
  return r;
}

DensityResult duration_density(const LevyExponent& exp, double t, const QuadratureSpec& spec)
{
  require_positive_t(t);
  return duration_density(PhiProfile(exp, spec), t, spec);
}

KappaResult kappa(const LevyExponent& exp, const QuadratureSpec& spec, double q_min)
{
  if (!(q_min > 0.0 && q_min < 1e-2))
    throw InvalidParameter("kappa needs q_min in (0, 1e-2)");
  KappaResult k;
  const double ratio = 0.1;
  for (double q = 0.1; q >= q_min * (1.0 - 1e-9); q *= ratio) {
    const auto r = resolvent_density(exp, q, 0.0, spec);
    k.qs.push_back(q);
    k.inverse_resolvent.push_back(1.0 / r.value);
  }
  const double theta0 = exp.theta(1e-8);
  if (theta0 > 1e-6) {
    k.diagnostic = "extrapolation unstable: theta(0+) > 0, killed or transient exponent";
    return k;
  }
  const std::size_t n = k.inverse_resolvent.size();
  if (n < 3) {
    k.diagnostic = "extrapolation unstable: fewer than three q values";
    return k;
  }
  // successive gammas from triples; agreement certifies the power model
  auto gamma_at = [&](std::size_t i) {
    const double d1 = k.inverse_resolvent[i + 1] - k.inverse_resolvent[i];
    const double d2 = k.inverse_resolvent[i + 2] - k.inverse_resolvent[i + 1];
    return std::log(d2 / d1) / std::log(ratio);
  };
  const double g_last = gamma_at(n - 3);
  const double g_prev = n >= 4 ? gamma_at(n - 4) : g_last;
  k.exponent = g_last;
  if (!std::isfinite(g_last) || !(g_last > 0.0) || std::abs(g_last - g_prev) > 0.05) {
    k.diagnostic = "extrapolation unstable: fitted power not settled";
    return k;
  }
  const double s = std::pow(ratio, g_last);
  const double f1 = k.inverse_resolvent[n - 2];
  const double f2 = k.inverse_resolvent[n - 1];
  k.value = (f2 - s * f1) / (1.0 - s);
  k.stable = true;
  k.diagnostic = "converged";
  return k;
}

SurvivalCheck survival_transform_check(const LevyExponent& exp, const PhiProfile& profile,
                                       double q, double t_max, const QuadratureSpec& spec)
{
  if (!(q > 0.0))
    throw DomainError("survival transform needs q > 0");
  if (!(t_max > 0.0))
    throw DomainError("survival transform needs t_max > 0");
  spec.validate();
  SurvivalCheck c;
  c.t_max = t_max;
  c.t_min = t_max * 1e-4;

  bool ok = profile.converged();
  auto rho = [&](double t) {
    const auto r = duration_density(profile, t, spec);
    ok = ok && r.converged;
    return r.value;
  };
  const QuadratureSpec loose = spec.with_tolerances(1e-6, 1e-10);

  // rho ~ A t^a on (0, t_min]
  const double r0 = rho(c.t_min);
  const double r1 = rho(2.0 * c.t_min);
  c.head_exponent = std::log2(r1 / r0);
  const double a = c.head_exponent;
  const auto head = integrate(
    [&](double t) { return -std::expm1(-q * t) * r0 * std::pow(t / c.t_min, a); }, 0.0, c.t_min,
    loose);

  const auto middle =
    integrate([&](double t) { return -std::expm1(-q * t) * rho(t); }, c.t_min, c.t_max, loose);

  // rho ~ B t^b on [t_max, inf)
  const double s0 = rho(0.5 * c.t_max);
  const double s1 = rho(c.t_max);
  c.tail_exponent = std::log2(s1 / s0);
  const double b = c.tail_exponent;
  const auto tail = integrate_from(
    [&](double t) { return -std::expm1(-q * t) * s1 * std::pow(t / c.t_max, b); }, c.t_max,
    loose);
  ok = ok && head.converged && middle.converged && tail.converged && b < -1.0;

  const auto k = kappa(exp, spec);
  c.kappa = k.stable ? k.value : 0.0;
  const auto rq = resolvent_density(exp, q, 0.0, spec);
  c.lhs = c.kappa / q + (head.value + middle.value + tail.value) / q;
  c.rhs = 1.0 / (q * rq.value);
  c.residual = std::abs(c.lhs - c.rhs);
  c.converged = ok && rq.converged && k.stable;
  return c;
}

SurvivalCheck survival_transform_check(const LevyExponent& exp, double q, double t_max,
                                       const QuadratureSpec& spec)
{
  if (!(q > 0.0))
    throw DomainError("survival transform needs q > 0");
  return survival_transform_check(exp, PhiProfile(exp, spec), q, t_max, spec);
}

} // namespace levy
