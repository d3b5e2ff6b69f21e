#include "levy/conditions.hpp"

#include "levy/errors.hpp"
#include "levy/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace levy {

namespace {

constexpr double converge_ratio = 0.9;
constexpr double diverge_ratio = 0.97;
constexpr int decades = 7;

std::string fmt(double v)
{
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double ratio_of(double prev, double next)
{
  if (!(prev > 0.0))
    return next > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return next / prev;
}

Divergence classify(double r)
{
  if (r >= diverge_ratio)
    return Divergence::diverges;
  if (r <= converge_ratio)
    return Divergence::converges;
  return Divergence::undecided;
}

// integral of f over the k-th decade toward infinity: [10^k, 10^(k+1)]
std::function<double(int)> upper_decades(const RealFunction& f, const QuadratureSpec& spec, bool& ok)
{
  return [&f, &spec, &ok](int k) {
    const double a = std::pow(10.0, k);
    const auto r = integrate(f, a, 10.0 * a, spec);
    ok = ok && r.converged;
    return r.value;
  };
}

// integral of f over the k-th decade toward zero: [10^-(k+1), 10^-k]
std::function<double(int)> lower_decades(const RealFunction& f, const QuadratureSpec& spec, bool& ok)
{
  return [&f, &spec, &ok](int k) {
    const double b = std::pow(10.0, -k);
    const auto r = integrate(f, 0.1 * b, b, spec);
    ok = ok && r.converged;
    return r.value;
  };
}

void add_probe(ConditionReport& rep, const std::string& name, const DivergenceProbe& p)
{
  const bool conv = p.verdict == Divergence::converges;
  rep.add(name + " decade increment ratio", p.last_ratio, converge_ratio, conv);
}

// slope of log y against log x
double log_slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double theta_growth(const LevyExponent& exp)
{
  std::vector<double> ls, ts;
  for (int k = 0; k <= 8; ++k) {
    const double l = std::pow(10.0, 2.0 + 0.5 * k);
    const double t = exp.theta(l);
    if (!(t > 0.0))
      return 0.0;
    ls.push_back(l);
    ts.push_back(t);
  }
  return log_slope(ls, ts);
}

} // namespace

DivergenceProbe probe_divergence(const std::function<double(int)>& increment, int count)
{
  if (count < 3)
    throw InvalidParameter("divergence probe needs at least three increments");
  DivergenceProbe p;
  for (int k = 0; k < count; ++k)
    p.increments.push_back(std::abs(increment(k)));
  const auto& d = p.increments;
  const double r1 = ratio_of(d[count - 3], d[count - 2]);
  const double r2 = ratio_of(d[count - 2], d[count - 1]);
  p.last_ratio = r2;
  const auto a = classify(r1);
  const auto b = classify(r2);
  p.verdict = a == b ? b : Divergence::undecided;
  return p;
}

ConditionReport check_L1prime(const LevyExponent& exp, double q, const QuadratureSpec& spec)
{
  if (!(q > 0.0))
    throw DomainError("check_L1prime needs q > 0");
  ConditionReport rep;
  rep.condition_id = ConditionId::L1p;
  try {
    const RealFunction f = [&](double l) { return 1.0 / (q + exp.theta(l)); };
    bool ok = true;
    const auto probe = probe_divergence(upper_decades(f, spec, ok), decades);
    add_probe(rep, "tail", probe);
    const double growth = theta_growth(exp);
    const bool grows = rep.add("fitted theta growth", growth, 1.0, growth > 1.0);

    if (probe.verdict == Divergence::diverges || growth <= 1.0 - 0.05) {
      rep.verdict = Verdict::fails;
      rep.note("integrand tail not integrable");
      return rep;
    }
    QuadratureSpec s = spec;
    if (grows)
      s.tail_decay_hint = growth;
    const auto total = integrate(f, s);
    rep.add("integral of 1/(q + theta)", total.value, s.abs_tol, total.converged);
    if (probe.verdict == Divergence::converges && grows && total.converged && ok) {
      rep.verdict = Verdict::holds;
    } else {
      rep.verdict = Verdict::inconclusive;
      rep.note("tail behaviour not resolved within the probed range");
    }
  } catch (const NumericFailure& e) {
    rep.verdict = Verdict::inconclusive;
    rep.note(std::string("exponent evaluation failed: ") + e.what());
  }
  return rep;
}

ConditionReport check_L2(const LevyTriplet& triplet)
{
  ConditionReport rep;
  rep.condition_id = ConditionId::L2;
  rep.add("gaussian coefficient v", triplet.v, 0.0, triplet.v > 0.0);
  if (triplet.v > 0.0) {
    rep.verdict = Verdict::holds;
    return rep;
  }
  bool any_diverges = false;
  bool disagree = false;
  const QuadratureSpec spec;
  for (const auto* side : { &triplet.positive, &triplet.negative }) {
    const std::string name = side == &triplet.positive ? "positive side" : "negative side";
    if (side->empty()) {
      rep.add(name + " declared exponent at 0", 0.0, 2.0, false);
      continue;
    }
    const bool declared = side->at_zero >= 2.0;
    rep.add(name + " declared exponent at 0", side->at_zero, 2.0, declared);
    const RealFunction g = [&](double u) { return u * side->density(u); };
    bool ok = true;
    const auto probe = probe_divergence(lower_decades(g, spec, ok), decades);
    const bool numeric = probe.verdict == Divergence::diverges;
    rep.add(name + " truncated |x| nu increment ratio", probe.last_ratio, diverge_ratio, numeric);
    if (probe.verdict == Divergence::undecided || !ok || numeric != declared)
      disagree = true;
    any_diverges = any_diverges || declared;
  }
  if (disagree) {
    rep.verdict = Verdict::inconclusive;
    rep.note("declared exponent and truncated integrals disagree");
  } else {
    rep.verdict = any_diverges ? Verdict::holds : Verdict::fails;
  }
  return rep;
}

ConditionReport check_L3(const LevyExponent& exp, const QuadratureSpec& spec)
{
  ConditionReport rep;
  rep.condition_id = ConditionId::L3;
  if (!exp.has_derivatives()) {
    rep.verdict = Verdict::inconclusive;
    rep.note("exponent has no derivatives");
    return rep;
  }
  try {
    const RealFunction f = [&](double l) {
      const auto v = exp.eval(l);
      const double den = v.theta * v.theta + v.omega * v.omega;
      return (std::abs(exp.theta_prime(l)) + std::abs(exp.omega_prime(l))) * std::min(l * l, 1.0) /
             den;
    };
    bool ok = true;
    const auto head = probe_divergence(lower_decades(f, spec, ok), decades);
    const auto tail = probe_divergence(upper_decades(f, spec, ok), decades);
    add_probe(rep, "lambda -> 0", head);
    add_probe(rep, "lambda -> inf", tail);
    if (head.verdict == Divergence::diverges || tail.verdict == Divergence::diverges) {
      rep.verdict = Verdict::fails;
      rep.note(head.verdict == Divergence::diverges ? "integrand not integrable as lambda -> 0"
                                                    : "integrand not integrable as lambda -> inf");
      rep.note("sufficient condition fails");
      return rep;
    }
    const auto lo = integrate(f, 0.0, 1.0, spec);
    const auto hi = integrate_from(f, 1.0, spec);
    const bool conv = lo.converged && hi.converged;
    rep.add("integral", lo.value + hi.value, spec.abs_tol, conv);
    if (head.verdict == Divergence::converges && tail.verdict == Divergence::converges && conv && ok)
      rep.verdict = Verdict::holds;
    else {
      rep.verdict = Verdict::inconclusive;
      rep.note("integrability not resolved within the probed range");
    }
  } catch (const NumericFailure& e) {
    rep.verdict = Verdict::inconclusive;
    rep.note(std::string("exponent evaluation failed: ") + e.what());
  }
  return rep;
}

ThetaLemmaReport check_theta_lemma(const LevyExponent& exp, const QuadratureSpec& spec)
{
  ThetaLemmaReport out;
  out.i.condition_id = ConditionId::THETA_I;
  out.ii.condition_id = ConditionId::THETA_II;
  out.iii.condition_id = ConditionId::THETA_III;

  // (i) minimum of theta on [L, 10 L]; growth of the minima must not stall
  try {
    std::vector<double> minima;
    for (int k = 0; k < decades; ++k) {
      const double a = std::pow(10.0, k);
      double m = std::numeric_limits<double>::infinity();
      for (int j = 0; j <= 64; ++j)
        m = std::min(m, exp.theta(a * std::pow(10.0, j / 64.0)));
      minima.push_back(m);
      out.i.add("min theta on [" + fmt(a) + ", " + fmt(10.0 * a) + "]", m, 0.0, m > 0.0);
    }
    const auto probe = probe_divergence([&](int k) { return minima[k + 1] - minima[k]; }, decades - 1);
    bool increasing = true;
    for (std::size_t k = 1; k < minima.size(); ++k)
      increasing = increasing && minima[k] > minima[k - 1];
    out.i.add("increment ratio of minima", probe.last_ratio, diverge_ratio,
              probe.verdict == Divergence::diverges);
    if (probe.verdict == Divergence::diverges && increasing)
      out.i.verdict = Verdict::holds;
    else if (probe.verdict == Divergence::converges || !increasing)
      out.i.verdict = Verdict::fails;
    else
      out.i.verdict = Verdict::inconclusive;
    out.i.note("sampled growth only");
  } catch (const NumericFailure& e) {
    out.i.verdict = Verdict::inconclusive;
    out.i.note(std::string("exponent evaluation failed: ") + e.what());
  }

  // (ii) int_0^1 lambda^2/theta + int_1^inf 1/theta
  try {
    const RealFunction near = [&](double l) { return l * l / exp.theta(l); };
    const RealFunction far = [&](double l) { return 1.0 / exp.theta(l); };
    bool ok = true;
    const auto head = probe_divergence(lower_decades(near, spec, ok), decades);
    const auto tail = probe_divergence(upper_decades(far, spec, ok), decades);
    add_probe(out.ii, "lambda^2/theta as lambda -> 0", head);
    add_probe(out.ii, "1/theta as lambda -> inf", tail);
    if (head.verdict == Divergence::diverges || tail.verdict == Divergence::diverges) {
      out.ii.verdict = Verdict::fails;
    } else {
      const auto a = integrate(near, 0.0, 1.0, spec);
      const auto b = integrate_from(far, 1.0, spec);
      const bool conv = a.converged && b.converged;
      out.ii.add("two-piece integral", a.value + b.value, spec.abs_tol, conv);
      out.ii.verdict = head.verdict == Divergence::converges &&
                           tail.verdict == Divergence::converges && conv && ok
                         ? Verdict::holds
                         : Verdict::inconclusive;
    }
  } catch (const NumericFailure& e) {
    out.ii.verdict = Verdict::inconclusive;
    out.ii.note(std::string("exponent evaluation failed: ") + e.what());
  }

  // (iii) q r_q(0) -> 0 with a positive fitted exponent
  const auto l1 = check_L1prime(exp, 1.0, spec);
  if (l1.verdict == Verdict::fails) {
    out.iii.verdict = Verdict::fails;
    out.iii.note("r_q(0) infinite: 1/(q + theta) not integrable");
    return out;
  }
  try {
    std::vector<double> qs, vals;
    bool conv = true;
    for (int k = 0; k <= 5; ++k) {
      const double q = std::pow(10.0, -k);
      const auto r = resolvent_density(exp, q, 0.0, spec);
      conv = conv && r.converged;
      qs.push_back(q);
      vals.push_back(q * r.value);
      out.iii.add("q r_q(0) at q = " + fmt(q), q * r.value, 0.0, r.converged);
    }
    const std::vector<double> tq(qs.end() - 3, qs.end());
    const std::vector<double> tv(vals.end() - 3, vals.end());
    const double slope = log_slope(tq, tv);
    const bool positive = out.iii.add("fitted decay exponent", slope, 0.05, slope > 0.05);
    if (positive && conv)
      out.iii.verdict = Verdict::holds;
    else if (conv && slope < 0.01)
      out.iii.verdict = Verdict::fails;
    else
      out.iii.verdict = Verdict::inconclusive;
  } catch (const NumericFailure& e) {
    out.iii.verdict = Verdict::inconclusive;
    out.iii.note(std::string("resolvent evaluation failed: ") + e.what());
  }
  return out;
}

ConditionReport check_AL(const ALBounds& bounds, const LevyExponent& exp, const QuadratureSpec&)
{
  bounds.validate();
  ConditionReport rep;
  rep.condition_id = ConditionId::AL_III;
  if (!exp.has_derivatives()) {
    rep.verdict = Verdict::inconclusive;
    rep.note("exponent has no derivatives; (i), (ii) not sampled");
    return rep;
  }
  const double a = bounds.alpha;
  const double slack = 1e-12;
  double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
  double w_lo = t_lo, w_hi = -t_lo;
  try {
    for (int k = 0; k <= 48; ++k) {
      const double l = std::pow(10.0, -6.0 + 0.25 * k);
      const double s = std::pow(l, a - 1.0);
      const double t = exp.theta_prime(l) / s;
      const double w = exp.omega_prime(l) / s;
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
      w_lo = std::min(w_lo, w);
      w_hi = std::max(w_hi, w);
    }
  } catch (const NumericFailure& e) {
    rep.verdict = Verdict::inconclusive;
    rep.note(std::string("exponent evaluation failed: ") + e.what());
    return rep;
  }
  auto below = [&](double v, double c) { return v >= c * (1.0 - slack) - slack; };
  auto above = [&](double v, double c) { return v <= c * (1.0 + slack) + slack; };
  bool in = true;
  in &= rep.add("(i) min theta'/lambda^(alpha-1)", t_lo, a * bounds.under_c_theta,
                below(t_lo, a * bounds.under_c_theta));
  in &= rep.add("(i) max theta'/lambda^(alpha-1)", t_hi, a * bounds.over_c_theta,
                above(t_hi, a * bounds.over_c_theta));
  in &= rep.add("(ii) min omega'/lambda^(alpha-1)", w_lo, a * bounds.under_c_omega,
                below(w_lo, a * bounds.under_c_omega));
  in &= rep.add("(ii) max omega'/lambda^(alpha-1)", w_hi, a * bounds.over_c_omega,
                above(w_hi, a * bounds.over_c_omega));
  const double lhs = bounds.condition_lhs();
  const double rhs = bounds.condition_rhs();
  if (!bounds.omega_positive()) {
    rep.add("(iii) scaled tan factor", lhs, rhs, lhs > rhs);
    rep.verdict = Verdict::inconclusive;
    rep.note("lower omega constant not positive");
    return rep;
  }
  const bool iii = rep.add("(iii) scaled tan factor", lhs, rhs, bounds.condition_iii());
  rep.verdict = in && iii ? Verdict::holds : Verdict::fails;
  if (!in)
    rep.note("derivative bounds violated on the sample grid");
  if (!iii)
    rep.note("condition (iii) fails");
  return rep;
}

ConditionReport check_LA_rho_bounds(const ALBounds& bounds, const LevyExponent& exp)
{
  bounds.validate();
  ConditionReport rep;
  rep.condition_id = ConditionId::LA_RHO_BOUNDS;
  const double a = bounds.alpha;
  double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
  double w_lo = t_lo, w_hi = -t_lo;
  try {
    for (int k = 0; k <= 48; ++k) {
      const double l = std::pow(10.0, -6.0 + 0.25 * k);
      const double s = std::pow(l, a);
      const auto v = exp.eval(l);
      t_lo = std::min(t_lo, v.theta / s);
      t_hi = std::max(t_hi, v.theta / s);
      w_lo = std::min(w_lo, v.omega / s);
      w_hi = std::max(w_hi, v.omega / s);
    }
  } catch (const NumericFailure& e) {
    rep.verdict = Verdict::inconclusive;
    rep.note(std::string("exponent evaluation failed: ") + e.what());
    return rep;
  }
  const double slack = 1e-12;
  bool in = true;
  in &= rep.add("min theta/lambda^alpha", t_lo, bounds.under_c_theta,
                t_lo >= bounds.under_c_theta * (1.0 - slack));
  in &= rep.add("max theta/lambda^alpha", t_hi, bounds.over_c_theta,
                t_hi <= bounds.over_c_theta * (1.0 + slack));
  in &= rep.add("min omega/lambda^alpha", w_lo, bounds.under_c_omega,
                w_lo >= bounds.under_c_omega * (1.0 - slack) - slack);
  in &= rep.add("max omega/lambda^alpha", w_hi, bounds.over_c_omega,
                w_hi <= bounds.over_c_omega * (1.0 + slack) + slack);
  in &= rep.add("lower omega constant", bounds.under_c_omega, 0.0, bounds.omega_positive());
  rep.verdict = in ? Verdict::holds : Verdict::fails;
  if (!bounds.omega_positive())
    rep.note("lower omega constant not positive");
  return rep;
}

namespace synthetic {

LevyExponent bounded_theta()
{
  LevyExponent::Parts p;
  p.theta = [](double l) { return l * l / (1.0 + l * l); };
  p.omega = [](double) { return 0.0; };
  p.theta_prime = [](double l) {
    const double d = 1.0 + l * l;
    return 2.0 * l / (d * d);
  };
  p.omega_prime = [](double) { return 0.0; };
  p.symmetric = true;
  p.label = "bounded theta";
  return LevyExponent(p);
}

LevyTriplet bounded_theta_triplet()
{
  LevyTriplet t;
  t.positive = exponential_density(0.5, 1.0);
  t.negative = exponential_density(0.5, 1.0);
  return t;
}

LevyExponent log_theta()
{
  LevyExponent::Parts p;
  p.theta = [](double l) { return std::log1p(l); };
  p.omega = [](double) { return 0.0; };
  p.theta_prime = [](double l) { return 1.0 / (1.0 + l); };
  p.omega_prime = [](double) { return 0.0; };
  p.symmetric = true;
  p.label = "log theta";
  return LevyExponent(p);
}

} // namespace synthetic

} // namespace levy
