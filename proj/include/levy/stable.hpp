#pragma once

#include "levy/quadrature.hpp"

namespace levy {

//! Strictly stable law with index alpha in (1, 2) and Levy density
//! c+ x^-(1+alpha) on (0, inf), c- |x|^-(1+alpha) on (-inf, 0).
struct StableParams
{
  double alpha = 1.5;
  double c_plus = 0.5;
  double c_minus = 0.5;

  //! From the (alpha, c_theta, beta) parameterization.
  static StableParams from_skewness(double alpha, double c_theta, double beta);

  //! beta = (c+ - c-)/(c+ + c-).
  double beta() const;
  //! c_theta = (c+ + c-) pi / (alpha S_alpha).
  double c_theta() const;
  //! c_omega = c_theta beta (-tan(pi alpha/2)).
  double c_omega() const;

  void validate() const;
};

struct StableConstants
{
  double alpha = 0.0;
  double c_theta = 0.0;
  double beta = 0.0;
  //! 2 Gamma(alpha) sin(pi alpha/2).
  double s_alpha = 0.0;
  //! 2 Gamma(alpha) (-cos(pi alpha/2)); denominator of the closed-form h0.
  double c_port = 0.0;
  //! int_0^inf (1 - cos x) x^-alpha dx = pi / c_port.
  double c_int = 0.0;
  //! The same integral at alpha + 1, = pi / (alpha S_alpha).
  double c_int_plus = 0.0;
  double c_omega = 0.0;
  //! -tan(pi alpha/2) > 0.
  double tan_factor = 0.0;
  //! p_t(0) = c_p t^(-1/alpha), by quadrature.
  double c_p = 0.0;
  //! r_q(0) = c_r q^(1/alpha - 1), by quadrature.
  double c_r = 0.0;
  //! Closed forms of c_p and c_r through Re[(c_theta + i c_omega)^(-1/alpha)].
  double c_p_closed = 0.0;
  double c_r_closed = 0.0;
  //! h0(x) = c_one_sided |x|^(alpha-1) on the nonzero side at beta = +-1
  //! with the given c_theta.
  double c_one_sided = 0.0;
};

StableConstants constants(const StableParams& params, const QuadratureSpec& spec = {});

//! (1 - beta sgn x) |x|^(alpha-1) / (c_theta (1 + beta^2 tan^2(pi alpha/2)) c_port).
double h0_closed(const StableParams& params, double x);

//! (1 - 1/alpha) / (c_r Gamma(1/alpha)) t^(1/alpha - 2), c_r in closed form.
double rho_closed(const StableParams& params, double t);

//! nu(T0 > t) = t^(1/alpha - 1) / (c_r Gamma(1/alpha)).
double survival_closed(const StableParams& params, double t);

struct IdentityCheck
{
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool converged = false;
};

//! int_0^inf e^-qt nu(T0 > t) dt by quadrature over t against
//! 1/(q r_q(0)) = q^(-1/alpha)/c_r with c_r by quadrature.
IdentityCheck entrance_law_identity_check(const StableParams& params, double q,
                                          const QuadratureSpec& spec = {});

} // namespace levy
