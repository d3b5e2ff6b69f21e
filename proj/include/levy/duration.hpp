#pragma once

#include "levy/exponent.hpp"
#include "levy/quadrature.hpp"
#include "levy/stable.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace levy {

//! phi(x) = r''/r^2 - 2 r'^2/r^3 at z = 1 + ix, r = r_z(0), the Fourier
//! transform of e^-t t^2 rho(t).
struct PhiValue
{
  std::complex<double> value;
  double error = 0.0;
  bool converged = false;
};
PhiValue phi(const LevyExponent& exp, double x, const QuadratureSpec& spec = {});

//! phi sampled on x = e^u - 1, u equispaced on [0, log(1 + x_max)], and
//! interpolated by quintic B-splines of phi (1 + x)^p (p = decay_fit), with
//! A (1 + ix)^-p beyond x_max. Negative x by Hermitian symmetry.
class PhiProfile
{
public:
  struct Options
  {
    double x_max = 1e6;
    int points = 512;
  };

  PhiProfile(const LevyExponent& exp, const QuadratureSpec& spec, Options options);
  PhiProfile(const LevyExponent& exp, const QuadratureSpec& spec = {})
    : PhiProfile(exp, spec, Options{})
  {}

  std::complex<double> operator()(double x) const;

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<std::complex<double>>& phi_values() const { return values_; }
  //! Least-squares slope p of log |phi| against log(1 + x) over [1, 1e3].
  double decay_fit() const { return decay_fit_; }
  //! Exponent of the tail model, fitted over the last decade of the grid.
  double tail_exponent() const { return tail_exponent_; }
  //! Largest relative spline error at midpoints checked against phi.
  double interpolation_error() const { return interpolation_error_; }
  //! Largest phi error estimate over the grid.
  double sample_error() const { return sample_error_; }
  bool converged() const { return converged_; }

private:
  std::vector<double> xs_;
  std::vector<std::complex<double>> values_;
  std::function<double(double)> spline_re_;
  std::function<double(double)> spline_im_;
  double u_max_ = 0.0;
  double x_max_ = 0.0;
  double decay_fit_ = 0.0;
  double tail_exponent_ = 0.0;
  std::complex<double> tail_amplitude_;
  double interpolation_error_ = 0.0;
  double sample_error_ = 0.0;
  bool converged_ = true;
};

struct DensityResult
{
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  //! value < -error_estimate.
  bool negative = false;
};

//! rho(t) = e^t / (pi t^2) int_0^inf Re[e^(itx) phi(x)] dx.
DensityResult duration_density(const PhiProfile& profile, double t, const QuadratureSpec& spec = {});
DensityResult duration_density(const LevyExponent& exp, double t, const QuadratureSpec& spec = {});

struct KappaResult
{
  double value = 0.0;
  //! Fitted gamma in 1/r_q(0) = kappa + A q^gamma.
  double exponent = 0.0;
  bool stable = false;
  std::string diagnostic;
  std::vector<double> qs;
  std::vector<double> inverse_resolvent;
};

//! kappa = lim 1/r_q(0) from q = 1e-1 down to q_min (ratio 10) by two-point
//! Richardson extrapolation in the fitted power. An exponent with
//! theta(0+) > 0 (killing) yields diagnostic "extrapolation unstable".
KappaResult kappa(const LevyExponent& exp, const QuadratureSpec& spec = {}, double q_min = 1e-6);

struct SurvivalCheck : IdentityCheck
{
  double kappa = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  //! Power-law exponents of rho fitted at t_min and t_max.
  double head_exponent = 0.0;
  double tail_exponent = 0.0;
};

//! LHS = int_0^inf e^-qt nu(T0 > t) dt = kappa/q + (1/q) int (1 - e^-qt) rho(t) dt
//! with rho by inversion on [t_min, t_max] = [t_max 1e-4, t_max] and fitted
//! power laws outside; RHS = 1/(q r_q(0)).
SurvivalCheck survival_transform_check(const LevyExponent& exp, double q, double t_max = 10.0,
                                       const QuadratureSpec& spec = {});
SurvivalCheck survival_transform_check(const LevyExponent& exp, const PhiProfile& profile,
                                       double q, double t_max = 10.0,
                                       const QuadratureSpec& spec = {});

//! phi of a strictly stable law: (1 - 1/alpha)(1/alpha) z^(-1 - 1/alpha) / c_r.
std::complex<double> phi_closed(const StableParams& params, double x);

} // namespace levy
