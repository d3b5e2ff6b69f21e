#include "levy/harmonic.hpp"

#include "levy/errors.hpp"
#include "levy/parallel.hpp"
#include "levy/resolvent.hpp"
#include "levy/special.hpp"
#include "levy/stable.hpp"
#include "scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

namespace levy {

namespace {

using detail::frequency_scaled;
using detail::merge;

const QuadratureResult zero_result{ 0.0, 0.0, true, 0, 0.0 };

QuadratureResult sin_part_direct(const LevyExponent& exp, double x, const QuadratureSpec& s)
{
  return integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      const double w = v.omega / v.theta;
      return w / (v.theta * (1.0 + w * w));
    },
    Kernel::sin, x, s);
}

// int g sin(lambda x) = -(1/x) int g' (1 - cos lambda x), g = omega/(theta^2 + omega^2)
QuadratureResult sin_part_by_parts(const LevyExponent& exp, double x, const QuadratureSpec& s)
{
  auto r = integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      const double w = v.omega / v.theta;
      const double d = 1.0 + w * w;
      return (exp.omega_prime(l) * (1.0 - w * w) - 2.0 * w * exp.theta_prime(l)) /
             (v.theta * v.theta * d * d);
    },
    Kernel::one_minus_cos, x, s);
  r.value /= -x;
  r.error_estimate /= std::abs(x);
  return r;
}

double power(double x, double a) { return std::pow(std::abs(x), a); }

// int_L^inf of a power law through (L/2, a) and (L, b); 0 when the two
// samples do not describe an integrable power law
double power_tail(double a, double b, double L)
{
  if (!(a != 0.0 && b != 0.0) || (a > 0.0) != (b > 0.0))
    return 0.0;
  const double p = std::log2(a / b);
  return p > 1.0 ? b * L / (p - 1.0) : 0.0;
}

// int_R g(y) dy for g ~ |y|^-p, p > 1: pieces over [x - L, x + L] split at x
// and 0 plus fitted power-law tails, with L doubled until the total settles
QuadratureResult convolve_line(const RealFunction& g, double x, double length,
                               const QuadratureSpec& outer, bool& inner_ok)
{
  double L = 64.0 * (std::abs(x) + length);
  std::vector<double> cuts{ x - L, x, 0.0, x + L };
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureResult core{ 0.0, 0.0, true, 0, 0.0 };
  QuadratureSpec piece = outer;
  auto add = [&](double a, double b) {
    const auto r = integrate(g, a, b, piece);
    core.value += r.value;
    core.error_estimate += r.error_estimate;
    core.converged = core.converged && r.converged;
    core.subdivisions_used += r.subdivisions_used;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    add(cuts[i], cuts[i + 1]);
  // far pieces are small; hold them to the accuracy of the whole
  const double target = std::max(outer.abs_tol, outer.rel_tol * std::abs(core.value));
  piece = outer.with_tolerances(outer.rel_tol, target);

  auto total = [&](double len) {
    return core.value + power_tail(g(x + 0.5 * len), g(x + len), len) +
           power_tail(g(x - 0.5 * len), g(x - len), len);
  };
  double prev = total(L);
  double change = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 8; ++k) {
    add(x + L, x + 2.0 * L);
    add(x - 2.0 * L, x - L);
    L *= 2.0;
    const double next = total(L);
    change = std::abs(next - prev);
    prev = next;
    if (change <= target)
      break;
  }
  QuadratureResult out = core;
  out.value = prev;
  out.error_estimate = core.error_estimate + change;
  out.converged = core.converged && inner_ok &&
                  change <= target;
  out.truncation_point = L;
  return out;
}

// 1 / lambda where theta(lambda) = q
double length_scale(const LevyExponent& exp, double q, const QuadratureSpec& spec)
{
  QuadratureSpec unit = spec;
  unit.characteristic_scale = 1.0;
  return 1.0 / frequency_scaled(unit, exp, q).characteristic_scale;
}

} // namespace

QuadratureResult h_q(const LevyExponent& exp, double q, double x, const QuadratureSpec& spec)
{
  if (!(q > 0.0))
    throw DomainError("h_q needs q > 0");
  spec.validate();
  if (x == 0.0)
    return zero_result;
  const QuadratureSpec s = frequency_scaled(spec, exp, q);
  const auto even = integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      const double u = q + v.theta;
      const double w = v.omega / u;
      return 1.0 / (u * (1.0 + w * w));
    },
    Kernel::one_minus_cos, x, s);
  if (exp.symmetric())
    return merge(even, zero_result, 1.0, 1.0 / pi, &spec);
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

H0Result h_0(const LevyExponent& exp, double x, const QuadratureSpec& spec, H0Method method)
{
  spec.validate();
  H0Result out;
  if (x == 0.0) {
    static_cast<QuadratureResult&>(out) = zero_result;
    return out;
  }
  if (method == H0Method::by_parts && !exp.has_derivatives())
    throw InvalidParameter("h0 by parts needs the derivatives of theta and omega");
  const QuadratureSpec s = frequency_scaled(spec, exp, 1.0);
  const auto even = integrate_oscillatory(
    [&](double l) {
      const ThetaOmega v = exp.eval(l);
      const double w = v.omega / v.theta;
      return 1.0 / (v.theta * (1.0 + w * w));
    },
    Kernel::one_minus_cos, x, s);
  QuadratureResult odd = zero_result;
  if (!exp.symmetric()) {
    if (method != H0Method::by_parts)
      odd = sin_part_direct(exp, x, s);
    const bool fallback =
      method == H0Method::automatic && !odd.converged && exp.has_derivatives();
    if (method == H0Method::by_parts || fallback) {
      odd = sin_part_by_parts(exp, x, s);
      out.by_parts = true;
    }
  }
  static_cast<QuadratureResult&>(out) = merge(even, odd, -1.0, 1.0 / pi, &spec);
  return out;
}

QuadratureResult h0_symmetric(const LevyExponent& exp, double x, const QuadratureSpec& spec)
{
  spec.validate();
  if (x == 0.0)
    return zero_result;
  const QuadratureSpec s = frequency_scaled(spec, exp, 1.0);
  const auto r = integrate_oscillatory([&](double l) { return 1.0 / exp.theta(l); },
                                       Kernel::one_minus_cos, x, s);
  return merge(r, zero_result, 1.0, 1.0 / pi, &spec);
}

RealFunction stable_h0_function(const StableParams& params, const QuadratureSpec& spec)
{
  params.validate();
  const LevyExponent exp = from_stable(params);
  const auto plus = h_0(exp, 1.0, spec);
  const auto minus = h_0(exp, -1.0, spec);
  if (!plus.converged || !minus.converged)
    throw NumericFailure("h0 anchor at x = +-1 did not converge");
  const double a = params.alpha - 1.0;
  const double hp = plus.value;
  const double hm = minus.value;
  return [=](double y) { return y == 0.0 ? 0.0 : (y > 0.0 ? hp : hm) * power(y, a); };
}

LimitCheck h0_limit_check(const LevyExponent& exp, double x, const std::vector<double>& qs,
                          const QuadratureSpec& spec, double tol)
{
  if (qs.empty())
    throw InvalidParameter("h0 limit check needs a nonempty q sequence");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!(qs[i] > 0.0))
      throw DomainError("h0 limit check needs q > 0");
    if (i > 0 && !(qs[i] < qs[i - 1]))
      throw InvalidParameter("h0 limit check needs a strictly decreasing q sequence");
  }

  LimitCheck c;
  c.x = x;
  c.qs = qs;
  c.hq.resize(qs.size());
  c.hq_errors.resize(qs.size());
  bool all_converged = true;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto r = h_q(exp, qs[i], x, spec);
    c.hq[i] = r.value;
    c.hq_errors[i] = r.error_estimate;
    all_converged = all_converged && r.converged;
  }
  const auto h0 = h_0(exp, x, spec);
  c.h0 = h0.value;
  c.h0_error = h0.error_estimate;
  all_converged = all_converged && h0.converged;

  std::ostringstream diag;
  const std::size_t n = qs.size();
  c.raw_gap = std::abs(c.hq[n - 1] - c.h0);
  const double noise = c.h0_error + 10.0 * spec.abs_tol;
  for (std::size_t i = 1; i < n; ++i) {
    const double before = std::abs(c.hq[i - 1] - c.h0);
    const double after = std::abs(c.hq[i] - c.h0);
    if (after > before + noise)
      c.gaps_shrink = false;
    if (exp.symmetric() && c.hq[i] < c.hq[i - 1] - noise)
      c.monotone = false;
  }
  if (n >= 2) {
    const double g1 = std::abs(c.hq[n - 2] - c.h0);
    const double g2 = std::abs(c.hq[n - 1] - c.h0);
    if (g1 > noise && g2 > noise)
      c.observed_rate = std::log(g2 / g1) / std::log(qs[n - 1] / qs[n - 2]);
  }

  const double ratio = n >= 2 ? qs[n - 1] / qs[n - 2] : 0.1;
  std::vector<double> series = c.hq;
  for (double q = qs[n - 1] * ratio; q >= 1e-8 * (1.0 - 1e-9) && ratio < 1.0; q *= ratio) {
    const auto r = h_q(exp, q, x, spec);
    all_converged = all_converged && r.converged;
    c.extension_qs.push_back(q);
    c.extension_hq.push_back(r.value);
    series.push_back(r.value);
  }
  std::tie(c.extrapolated, c.extrapolation_error) = wynn_epsilon(series);
  const double limit_error = std::abs(c.extrapolated - c.h0);
  const double threshold = tol * std::max(1.0, std::abs(c.h0));
  c.converged = all_converged && c.gaps_shrink && c.monotone && limit_error <= threshold;
  diag << "raw gap " << c.raw_gap << " at q=" << qs[n - 1] << ", extrapolated gap " << limit_error
       << ", observed rate " << c.observed_rate;
  if (!all_converged)
    diag << "; a quadrature did not converge";
  if (!c.gaps_shrink)
    diag << "; gaps grow along the sequence";
  if (!c.monotone)
    diag << "; h_q not increasing as q decreases";
  c.diagnostics = diag.str();
  return c;
}

QuadratureResult harmonicity_residual(const LevyExponent& exp, const RealFunction& h,
                                      double growth, double q, double x,
                                      const QuadratureSpec& spec)
{
  if (!(q > 0.0))
    throw DomainError("harmonicity residual needs q > 0");
  spec.validate();
  if (!(growth < exp.growth_exponent()))
    throw DomainError("harmonicity residual needs h to grow slower than theta");

  bool inner_ok = true;
  const QuadratureSpec outer = outer_spec(spec);
  const auto conv = convolve_line(
    [&](double y) {
      const auto r = resolvent_density(exp, q, y - x, spec);
      inner_ok = inner_ok && meets(r, outer);
      return h(y) * r.value;
    },
    x, length_scale(exp, q, spec), outer, inner_ok);
  const auto rx = resolvent_density(exp, q, -x, spec);

  QuadratureResult out;
  out.value = std::abs(q * conv.value - h(x) - rx.value);
  out.error_estimate = q * (conv.error_estimate + spec.rel_tol * std::abs(conv.value)) +
                       rx.error_estimate;
  out.converged = conv.converged && rx.converged;
  out.subdivisions_used = conv.subdivisions_used;
  out.truncation_point = conv.truncation_point;
  return out;
}

QuadratureResult hp_identity_residual(const LevyExponent& exp, double q, double p, double x,
                                      const QuadratureSpec& spec)
{
  if (!(q > 0.0) || !(p > 0.0))
    throw DomainError("hp identity needs q, p > 0");
  if (q == p)
    throw DomainError("hp identity needs q != p");
  spec.validate();

  bool inner_ok = true;
  const QuadratureSpec outer = outer_spec(spec);
  const auto conv = convolve_line(
    [&](double y) {
      const auto hp = h_q(exp, p, y, spec);
      const auto r = resolvent_density(exp, q, y - x, spec);
      inner_ok = inner_ok && meets(hp, outer) && meets(r, outer);
      return hp.value * r.value;
    },
    x, length_scale(exp, std::min(p, q), spec), outer, inner_ok);
  const auto hpx = h_q(exp, p, x, spec);
  const auto rqx = resolvent_density(exp, q, -x, spec);
  const auto rp0 = resolvent_density(exp, p, 0.0, spec);
  const double rhs = (hpx.value + rqx.value) / (q - p) - p * rp0.value / (q * (q - p));

  QuadratureResult out;
  out.value = std::abs(conv.value - rhs);
  out.error_estimate = conv.error_estimate + spec.rel_tol * std::abs(conv.value) +
                       (hpx.error_estimate + rqx.error_estimate) / std::abs(q - p) +
                       p * rp0.error_estimate / (q * std::abs(q - p));
  out.converged = conv.converged && hpx.converged && rqx.converged && rp0.converged;
  out.subdivisions_used = conv.subdivisions_used;
  out.truncation_point = conv.truncation_point;
  return out;
}

ALBounds ALBounds::tight(const StableParams& params)
{
  params.validate();
  const double ct = params.c_theta();
  const double co = params.c_omega();
  return { params.alpha, ct, ct, co, co };
}

void ALBounds::validate() const
{
  if (!(alpha > 1.0 && alpha < 2.0))
    throw InvalidParameter("AL bounds need alpha in (1, 2)");
  if (!(under_c_theta > 0.0))
    throw InvalidParameter("AL bounds need a positive lower theta constant");
  if (!(under_c_theta <= over_c_theta) || !(under_c_omega <= over_c_omega))
    throw InvalidParameter("AL bounds need under <= over for each pair");
}

bool ALBounds::omega_positive() const { return under_c_omega > 0.0; }

double ALBounds::tan_factor() const { return -std::tan(pi * alpha / 2.0); }

double ALBounds::condition_lhs() const
{
  const double under = under_c_theta * under_c_theta + under_c_omega * under_c_omega;
  const double over = over_c_theta * over_c_theta + over_c_omega * over_c_omega;
  return tan_factor() * under_c_theta * under / over;
}

double ALBounds::condition_rhs() const
{
  return std::max(over_c_omega, over_c_theta - under_c_omega);
}

bool ALBounds::condition_iii() const
{
  return omega_positive() && condition_lhs() > condition_rhs();
}

double ALBounds::upper_constant() const
{
  validate();
  // smallest omega^2 / lambda^(2 alpha) allowed by the omega bounds
  const double omega_min =
    (under_c_omega <= 0.0 && over_c_omega >= 0.0)
      ? 0.0
      : std::min(under_c_omega * under_c_omega, over_c_omega * over_c_omega);
  const double denom = under_c_theta * under_c_theta + omega_min;
  const double omega_max = std::max(std::abs(under_c_omega), std::abs(over_c_omega));
  const double c_int = pi / (2.0 * gamma(alpha) * -std::cos(pi * alpha / 2.0));
  const double s_alpha = 2.0 * gamma(alpha) * std::sin(pi * alpha / 2.0);
  // alpha C_(alpha+1) / pi = 1 / S_alpha
  return c_int / (pi * under_c_theta) + (over_c_theta + omega_max) / (s_alpha * denom);
}

double ALBounds::lower_constant(double x) const
{
  validate();
  const double under = under_c_theta * under_c_theta + under_c_omega * under_c_omega;
  const double over = over_c_theta * over_c_theta + over_c_omega * over_c_omega;
  const double s_alpha = 2.0 * gamma(alpha) * std::sin(pi * alpha / 2.0);
  const double lead = tan_factor() * under_c_theta / over;
  const double numerator = x > 0.0 ? over_c_omega : over_c_theta - under_c_omega;
  // a negative numerator is bounded with the larger denominator
  const double denom = numerator >= 0.0 ? under : over;
  return (lead - numerator / denom) / s_alpha;
}

ConditionReport al_bounds_check(const LevyExponent& exp, const ALBounds& bounds,
                                const std::vector<double>& xs, const std::vector<double>& qs,
                                const QuadratureSpec& spec)
{
  bounds.validate();
  ConditionReport rep;
  rep.condition_id = ConditionId::AL_III;
  const double a1 = bounds.alpha - 1.0;
  const double upper = bounds.upper_constant();
  bool ok = true;
  bool numeric = true;

  std::vector<double> points;
  for (double x : xs)
    if (x != 0.0)
      points.push_back(x);
  if (points.empty())
    throw InvalidParameter("AL bounds check needs a nonzero x");

  // values within their error estimate (plus rounding) of a bound pass
  auto slack = [&](const QuadratureResult& r) {
    return r.error_estimate + 64.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  };
  double worst = 0.0;
  for (double q : qs) {
    for (double x : points) {
      const auto r = h_q(exp, q, x, spec);
      numeric = numeric && r.converged;
      worst = std::max(worst, (r.value - slack(r)) / power(x, a1));
    }
  }
  if (!qs.empty())
    ok = rep.add("max h_q/|x|^(a-1)", worst, upper, worst <= upper) && ok;

  std::vector<double> ratios;
  std::vector<double> margins;
  for (double x : points) {
    const auto r = h_0(exp, x, spec);
    numeric = numeric && r.converged;
    ratios.push_back(r.value / power(x, a1));
    margins.push_back(slack(r) / power(x, a1));
  }
  double h0_max = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i)
    h0_max = std::max(h0_max, ratios[i] - margins[i]);
  ok = rep.add("max h0/|x|^(a-1)", h0_max, upper, h0_max <= upper) && ok;

  rep.add("condition (iii) lhs", bounds.condition_lhs(), bounds.condition_rhs(),
          bounds.condition_iii());
  if (bounds.condition_iii()) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double lower = bounds.lower_constant(points[i]);
      std::ostringstream name;
      name << "h0/|x|^(a-1) at x=" << points[i];
      ok = rep.add(name.str(), ratios[i], lower, ratios[i] + margins[i] >= lower) && ok;
    }
  } else if (!bounds.omega_positive()) {
    rep.note("lower omega constant not positive; condition (iii) not applicable, upper bound only");
  } else {
    rep.note("condition (iii) fails; upper bound only");
  }

  if (!numeric) {
    rep.verdict = Verdict::inconclusive;
    rep.note("a quadrature did not converge");
  } else {
    rep.verdict = ok ? Verdict::holds : Verdict::fails;
  }
  return rep;
}

HarmonicProfile harmonic_profile(const LevyExponent& exp, const std::vector<double>& xs,
                                 const std::vector<double>& qs, const QuadratureSpec& spec)
{
  HarmonicProfile p{ exp, xs, {}, {}, {}, {} };
  const std::size_t n = xs.size();
  p.h0_values.resize(n);
  p.error_estimates.resize(n);
  std::vector<char> parts(n, 0);
  std::vector<std::vector<double>> hq(qs.size(), std::vector<double>(n));
  parallel_for(n, [&](std::size_t i) {
    const auto r = h_0(exp, xs[i], spec);
    if (!r.converged)
      throw NumericFailure("h0 did not converge", xs[i]);
    p.h0_values[i] = r.value;
    p.error_estimates[i] = r.error_estimate;
    parts[i] = r.by_parts ? 1 : 0;
    for (std::size_t k = 0; k < qs.size(); ++k) {
      const auto s = h_q(exp, qs[k], xs[i], spec);
      if (!s.converged)
        throw NumericFailure("h_q did not converge", xs[i]);
      hq[k][i] = s.value;
    }
  });
  p.by_parts.assign(parts.begin(), parts.end());
  for (std::size_t k = 0; k < qs.size(); ++k)
    p.hq_values[qs[k]] = std::move(hq[k]);
  return p;
}

} // namespace levy
