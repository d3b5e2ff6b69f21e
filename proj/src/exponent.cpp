#include "levy/exponent.hpp"

#include "levy/errors.hpp"
#include "levy/stable.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace levy {

namespace {

double require(const QuadratureResult& r, const char* what, double lambda)
{
  if (!r.converged) {
    std::ostringstream msg;
    msg << what << " did not converge at lambda = " << lambda;
    throw NumericFailure(msg.str(), lambda);
  }
  return r.value;
}

// t - sin t without cancellation for small t
double t_minus_sin(double t)
{
  if (std::abs(t) < 0.1) {
    const double t2 = t * t;
    return t * t2 * (1.0 / 6.0 - t2 * (1.0 / 120.0 - t2 * (1.0 / 5040.0 - t2 / 362880.0)));
  }
  return t - std::sin(t);
}

double one_minus_cos(double t)
{
  const double s = std::sin(0.5 * t);
  return 2.0 * s * s;
}

RealFunction sum_of(const LevyDensity& a, const LevyDensity& b)
{
  if (a.empty())
    return b.density;
  if (b.empty())
    return a.density;
  return [fa = a.density, fb = b.density](double u) { return fa(u) + fb(u); };
}

// int_0^1 (lambda u - sin lambda u) g - int_1^inf sin(lambda u) g
double compensated_sin(const RealFunction& g, double lambda, const QuadratureSpec& spec)
{
  const auto near = integrate([&](double u) { return t_minus_sin(lambda * u) * g(u); }, 0.0,
                              1.0, spec);
  const auto far = integrate_oscillatory_from(g, Kernel::sin, lambda, 1.0, spec);
  return require(near, "omega (|x| < 1)", lambda) - require(far, "omega (|x| >= 1)", lambda);
}

// derivative of compensated_sin in lambda
double compensated_sin_prime(const RealFunction& g, double lambda, const QuadratureSpec& spec)
{
  const auto near = integrate(
    [&](double u) { return u * one_minus_cos(lambda * u) * g(u); }, 0.0, 1.0, spec);
  const auto far = integrate_oscillatory_from([&](double u) { return u * g(u); }, Kernel::cos,
                                              lambda, 1.0, spec);
  return require(near, "omega' (|x| < 1)", lambda) - require(far, "omega' (|x| >= 1)", lambda);
}

} // namespace

LevyDensity power_law_density(double c, double alpha)
{
  if (!(c >= 0.0))
    throw InvalidParameter("power-law density coefficient must be nonnegative");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw InvalidParameter("power-law density index must lie in (0, 2)");
  LevyDensity d;
  if (c == 0.0)
    return d;
  d.density = [c, p = 1.0 + alpha](double u) { return c * std::pow(u, -p); };
  d.at_zero = 1.0 + alpha;
  d.at_infinity = 1.0 + alpha;
  d.power_law = true;
  return d;
}

LevyDensity exponential_density(double c, double rate)
{
  if (!(c >= 0.0) || !(rate > 0.0))
    throw InvalidParameter("exponential density needs c >= 0 and rate > 0");
  LevyDensity d;
  if (c == 0.0)
    return d;
  d.density = [c, rate](double u) { return c * std::exp(-rate * u); };
  d.at_zero = 0.0;
  d.at_infinity = std::numeric_limits<double>::infinity();
  return d;
}

void LevyTriplet::validate() const
{
  if (!(v >= 0.0))
    throw InvalidParameter("Gaussian coefficient v must be nonnegative");
  if (!std::isfinite(b))
    throw InvalidParameter("drift b must be finite");
  for (const LevyDensity* side : { &positive, &negative }) {
    if (side->empty())
      continue;
    if (!(side->at_zero < 3.0))
      throw InvalidParameter("Levy density must satisfy int_0^1 x^2 nu(dx) < inf (exponent at 0 below 3)");
    if (!(side->at_infinity > 1.0))
      throw InvalidParameter("Levy density must satisfy int_1^inf nu(dx) < inf (exponent at inf above 1)");
    for (int k = -24; k <= 24; ++k) {
      const double u = std::pow(10.0, k / 4.0);
      const double g = side->density(u);
      if (!(g >= 0.0))
        throw InvalidParameter("Levy density must be nonnegative");
    }
  }
}

LevyTriplet stable_triplet(double alpha, double c_plus, double c_minus)
{
  if (!(alpha > 1.0 && alpha < 2.0))
    throw InvalidParameter("stable index must lie in (1, 2)");
  LevyTriplet t;
  t.b = (c_plus - c_minus) / (alpha - 1.0);
  t.positive = power_law_density(c_plus, alpha);
  t.negative = power_law_density(c_minus, alpha);
  return t;
}

LevyExponent::LevyExponent(Parts parts)
{
  if (!parts.theta || !parts.omega)
    throw InvalidParameter("exponent needs both theta and omega");
  if (static_cast<bool>(parts.theta_prime) != static_cast<bool>(parts.omega_prime))
    throw InvalidParameter("derivatives must be given for both theta and omega or neither");
  if (parts.alpha_hint && !(*parts.alpha_hint > 1.0 && *parts.alpha_hint <= 2.0))
    throw InvalidParameter("alpha_hint must lie in (1, 2]");
  parts_ = std::make_shared<const Parts>(std::move(parts));
}

ThetaOmega LevyExponent::eval(double lambda) const
{
  if (lambda == 0.0)
    return {};
  const double a = std::abs(lambda);
  const double w = parts_->symmetric ? 0.0 : parts_->omega(a);
  return { parts_->theta(a), lambda < 0.0 ? -w : w };
}

double LevyExponent::theta(double lambda) const
{
  return lambda == 0.0 ? 0.0 : parts_->theta(std::abs(lambda));
}

double LevyExponent::omega(double lambda) const
{
  if (lambda == 0.0 || parts_->symmetric)
    return 0.0;
  const double w = parts_->omega(std::abs(lambda));
  return lambda < 0.0 ? -w : w;
}

double LevyExponent::theta_prime(double lambda) const
{
  if (!has_derivatives())
    throw InvalidParameter("exponent '" + label() + "' has no derivatives");
  if (lambda == 0.0)
    return 0.0;
  const double d = parts_->theta_prime(std::abs(lambda));
  return lambda < 0.0 ? -d : d;
}

double LevyExponent::omega_prime(double lambda) const
{
  if (!has_derivatives())
    throw InvalidParameter("exponent '" + label() + "' has no derivatives");
  if (parts_->symmetric)
    return 0.0;
  return parts_->omega_prime(std::abs(lambda));
}

double LevyExponent::growth_exponent() const
{
  if (parts_->alpha_hint)
    return *parts_->alpha_hint;
  constexpr int n = 41;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(1e2) + (std::log(1e6) - std::log(1e2)) * i / (n - 1);
    const double th = std::max(theta(std::exp(lx)), std::numeric_limits<double>::min());
    const double ly = std::log(th);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

LevyExponent from_stable(const StableParams& params)
{
  params.validate();
  const double a = params.alpha;
  const double ct = params.c_theta();
  const double cw = params.c_omega();
  LevyExponent::Parts p;
  p.theta = [a, ct](double l) { return ct * std::pow(l, a); };
  p.omega = [a, cw](double l) { return cw * std::pow(l, a); };
  p.theta_prime = [a, ct](double l) { return a * ct * std::pow(l, a - 1.0); };
  p.omega_prime = [a, cw](double l) { return a * cw * std::pow(l, a - 1.0); };
  p.alpha_hint = a;
  p.symmetric = cw == 0.0;
  std::ostringstream label;
  label.precision(17);
  label << "stable(alpha=" << a << ",c_theta=" << ct << ",beta=" << params.beta() << ")";
  p.label = label.str();
  return LevyExponent(std::move(p));
}

LevyExponent brownian(double v)
{
  if (!(v > 0.0))
    throw InvalidParameter("Brownian coefficient v must be positive");
  LevyExponent::Parts p;
  p.theta = [v](double l) { return v * l * l; };
  p.omega = [](double) { return 0.0; };
  p.theta_prime = [v](double l) { return 2.0 * v * l; };
  p.omega_prime = [](double) { return 0.0; };
  p.alpha_hint = 2.0;
  p.symmetric = true;
  std::ostringstream label;
  label.precision(17);
  label << "brownian(v=" << v << ")";
  p.label = label.str();
  return LevyExponent(std::move(p));
}

LevyExponent from_triplet(const LevyTriplet& triplet, const QuadratureSpec& spec)
{
  triplet.validate();
  spec.validate();
  const double b = triplet.b;
  const double v = triplet.v;
  const RealFunction both = sum_of(triplet.positive, triplet.negative);
  const RealFunction gp = triplet.positive.density;
  const RealFunction gm = triplet.negative.density;

  LevyExponent::Parts p;
  p.theta = [=](double l) {
    double t = v * l * l;
    if (both)
      t += require(integrate_oscillatory(both, Kernel::one_minus_cos, l, spec), "theta", l);
    return t;
  };
  p.omega = [=](double l) {
    double w = b * l;
    if (gp)
      w += compensated_sin(gp, l, spec);
    if (gm)
      w -= compensated_sin(gm, l, spec);
    return w;
  };

  const auto power_or_empty = [](const LevyDensity& d) { return d.empty() || d.power_law; };
  if (power_or_empty(triplet.positive) && power_or_empty(triplet.negative)) {
    p.theta_prime = [=](double l) {
      double d = 2.0 * v * l;
      if (both) {
        const auto r = integrate_oscillatory([&](double u) { return u * both(u); }, Kernel::sin,
                                             l, spec);
        d += require(r, "theta'", l);
      }
      return d;
    };
    p.omega_prime = [=](double l) {
      double d = b;
      if (gp)
        d += compensated_sin_prime(gp, l, spec);
      if (gm)
        d -= compensated_sin_prime(gm, l, spec);
      return d;
    };
  }

  p.symmetric = b == 0.0 && triplet.positive.empty() && triplet.negative.empty();
  if (triplet.positive.power_law || triplet.negative.power_law) {
    const double a = (triplet.positive.empty() ? triplet.negative : triplet.positive).at_zero - 1.0;
    if (v == 0.0 && a > 1.0)
      p.alpha_hint = a;
  }
  if (v > 0.0)
    p.alpha_hint = 2.0;
  std::ostringstream label;
  label.precision(17);
  label << "triplet(b=" << b << ",v=" << v << ")";
  p.label = label.str();
  return LevyExponent(std::move(p));
}

ExponentCheck check_invariants(const LevyExponent& exp, double tol, double tol_derivative)
{
  ExponentCheck c;
  const auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    c.failures.push_back(what);
  };

  for (int k = -12; k <= 12; ++k) {
    const double l = std::pow(10.0, k / 2.0);
    const ThetaOmega pos = exp.eval(l);
    const ThetaOmega neg = exp.eval(-l);
    if (!(pos.theta >= 0.0) && c.nonnegative)
      fail(c.nonnegative, "theta < 0 at lambda = " + std::to_string(l));
    if ((neg.theta != pos.theta || neg.omega != -pos.omega) && c.parity)
      fail(c.parity, "parity broken at lambda = " + std::to_string(l));
  }

  const ThetaOmega small = exp.eval(1e-8);
  if (std::abs(small.theta) > tol || std::abs(small.omega) > tol)
    fail(c.vanishes_at_zero, "theta or omega does not vanish at 0+");

  if (exp.has_derivatives()) {
    for (double l : { 0.5, 1.0, 5.0 }) {
      const double h = 1e-5 * l;
      const ThetaOmega up = exp.eval(l + h);
      const ThetaOmega dn = exp.eval(l - h);
      const double fd_t = (up.theta - dn.theta) / (2.0 * h);
      const double fd_w = (up.omega - dn.omega) / (2.0 * h);
      const double dt = exp.theta_prime(l);
      const double dw = exp.omega_prime(l);
      const double scale = std::abs(dt) + std::abs(dw);
      if (std::abs(fd_t - dt) > tol_derivative * std::max(std::abs(dt), 1e-3 * scale) ||
          std::abs(fd_w - dw) > tol_derivative * std::max(std::abs(dw), 1e-3 * scale)) {
        if (c.derivatives_consistent)
          fail(c.derivatives_consistent,
               "finite differences disagree with derivatives at lambda = " + std::to_string(l));
      }
    }
  }
  return c;
}

} // namespace levy
