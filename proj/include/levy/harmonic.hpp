#pragma once

#include "levy/exponent.hpp"
#include "levy/quadrature.hpp"
#include "levy/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace levy {

struct StableParams;

//! h_q(x) = r_q(0) - r_q(-x) = (1/pi) int_0^inf [(q + theta)(1 - cos lambda x)
//! - omega sin lambda x] / F dlambda, F = (q + theta)^2 + omega^2.
QuadratureResult h_q(const LevyExponent& exp, double q, double x, const QuadratureSpec& spec = {});

enum class H0Method
{
  //! Direct sin integral; integration by parts when it does not converge.
  automatic,
  direct,
  by_parts
};

struct H0Result : QuadratureResult
{
  //! The sin part was computed as -(1/x) int g'(lambda)(1 - cos lambda x)
  //! with g = omega / (theta^2 + omega^2).
  bool by_parts = false;
};

//! h0(x) = (1/pi) int_0^inf [theta (1 - cos lambda x) - omega sin lambda x]
//! / (theta^2 + omega^2) dlambda. by_parts needs derivatives.
H0Result h_0(const LevyExponent& exp, double x, const QuadratureSpec& spec = {},
             H0Method method = H0Method::automatic);

//! (1/pi) int_0^inf (1 - cos lambda x) / theta dlambda; ignores omega.
QuadratureResult h0_symmetric(const LevyExponent& exp, double x, const QuadratureSpec& spec = {});

//! h0 of a strictly stable exponent from h0(1) and h0(-1) by the exact
//! scaling h0(x) = h0(sgn x) |x|^(alpha - 1). Throws NumericFailure when
//! either anchor does not converge.
RealFunction stable_h0_function(const StableParams& params, const QuadratureSpec& spec = {});

struct LimitCheck
{
  double x = 0.0;
  std::vector<double> qs;
  std::vector<double> hq;
  std::vector<double> hq_errors;
  double h0 = 0.0;
  double h0_error = 0.0;
  //! |h_q - h0| at the smallest q.
  double raw_gap = 0.0;
  //! q values appended to the sequence (same ratio as its last step, down
  //! to 1e-8) and their h_q, used only for extrapolation.
  std::vector<double> extension_qs;
  std::vector<double> extension_hq;
  //! Wynn epsilon limit of h_q over the extended sequence.
  double extrapolated = 0.0;
  double extrapolation_error = 0.0;
  //! Slope of log |h_q - h0| against log q over the last two q.
  double observed_rate = 0.0;
  //! |h_q - h0| decreases along the sequence.
  bool gaps_shrink = true;
  //! Symmetric exponents only: h_q increases as q decreases.
  bool monotone = true;
  //! |extrapolated - h0| <= tol and gaps_shrink (and monotone when symmetric).
  bool converged = false;
  std::string diagnostics;
};

//! Verifies h_q(x) -> h0(x) along a decreasing sequence of q. The gap
//! decays like q^((2 - alpha)/alpha) for asymmetric exponents, so the limit
//! is judged on the extrapolation over the extended sequence; the raw gap is
//! reported alongside.
LimitCheck h0_limit_check(const LevyExponent& exp, double x, const std::vector<double>& qs,
                          const QuadratureSpec& spec = {}, double tol = 1e-4);

//! |q R_q h(x) - h(x) - r_q(-x)| with R_q h(x) = int h(y) r_q(y - x) dy by
//! double quadrature. growth is the exponent g in |h(y)| <~ |y|^g and must
//! be below the growth exponent of theta.
QuadratureResult harmonicity_residual(const LevyExponent& exp, const RealFunction& h,
                                      double growth, double q, double x,
                                      const QuadratureSpec& spec = {});

//! |R_q h_p(x) - h_p(x)/(q - p) - r_q(-x)/(q - p) + p r_p(0)/(q (q - p))|.
QuadratureResult hp_identity_residual(const LevyExponent& exp, double q, double p, double x,
                                      const QuadratureSpec& spec = {});

//! Two-sided bounds alpha c_ l^(alpha-1) <= theta'(l), omega'(l) <= alpha c^ l^(alpha-1).
struct ALBounds
{
  double alpha = 1.5;
  double under_c_theta = 0.0;
  double over_c_theta = 0.0;
  double under_c_omega = 0.0;
  double over_c_omega = 0.0;

  //! Equal under and over constants of a strictly stable law.
  static ALBounds tight(const StableParams& params);

  //! Throws InvalidParameter unless alpha in (1, 2), under_c_theta > 0 and
  //! under <= over for each pair.
  void validate() const;
  //! under_c_omega > 0, the positivity the lower bound needs.
  bool omega_positive() const;
  double tan_factor() const;
  //! tau c_theta_ (c_theta_^2 + c_omega_^2) / (c_theta^^2 + c_omega^^2).
  double condition_lhs() const;
  //! max{c_omega^, c_theta^ - c_omega_}.
  double condition_rhs() const;
  bool condition_iii() const;
  //! c with h_q(x) <= c |x|^(alpha-1) for all q >= 0.
  double upper_constant() const;
  //! c with h0(x) >= c |x|^(alpha-1) on the side sgn(x); meaningful when
  //! condition_iii() holds.
  double lower_constant(double x) const;
};

//! Samples h_q(x)/|x|^(alpha-1) over xs x qs against upper_constant and, when
//! condition (iii) holds, h0(x)/|x|^(alpha-1) against [lower, upper].
ConditionReport al_bounds_check(const LevyExponent& exp, const ALBounds& bounds,
                                const std::vector<double>& xs, const std::vector<double>& qs,
                                const QuadratureSpec& spec = {});

struct HarmonicProfile
{
  LevyExponent exponent;
  std::vector<double> xs;
  std::vector<double> h0_values;
  std::map<double, std::vector<double>> hq_values;
  std::vector<double> error_estimates;
  std::vector<bool> by_parts;
};

//! h0 and h_q over a grid, parallel over grid points.
HarmonicProfile harmonic_profile(const LevyExponent& exp, const std::vector<double>& xs,
                                 const std::vector<double>& qs, const QuadratureSpec& spec = {});

} // namespace levy
