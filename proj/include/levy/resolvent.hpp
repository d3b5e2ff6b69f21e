#pragma once

#include "levy/exponent.hpp"
#include "levy/quadrature.hpp"

#include <complex>

namespace levy {

//! p_t(x) = (1/pi) int_0^inf e^(-t theta) cos(lambda x + t omega) dlambda.
QuadratureResult transition_density(const LevyExponent& exp, double t, double x,
                                    const QuadratureSpec& spec = {});

//! r_q(x) = (1/pi) int_0^inf [(q + theta) cos(lambda x) - omega sin(lambda x)] / F,
//! F = (q + theta)^2 + omega^2. r_q(-x) flips the sign of the sin term.
QuadratureResult resolvent_density(const LevyExponent& exp, double q, double x,
                                   const QuadratureSpec& spec = {});

//! r_z(0) = (1/pi) int_0^inf (z + theta) / F_lambda(z), Re z > 0.
ComplexQuadratureResult resolvent_zero_complex(const LevyExponent& exp, std::complex<double> z,
                                               const QuadratureSpec& spec = {});

//! d/dz r_z(0); integrand (omega^2 - u^2)/F^2 with u = z + theta.
ComplexQuadratureResult resolvent_zero_dz(const LevyExponent& exp, std::complex<double> z,
                                          const QuadratureSpec& spec = {});

//! d^2/dz^2 r_z(0); integrand 2u(u^2 - 3 omega^2)/F^3.
ComplexQuadratureResult resolvent_zero_dz2(const LevyExponent& exp, std::complex<double> z,
                                           const QuadratureSpec& spec = {});

//! r_z(0) and both derivatives from one pass over the integrand.
struct ResolventJet
{
  std::complex<double> r;
  std::complex<double> dr;
  std::complex<double> d2r;
  //! Sum of the three error estimates, and each one.
  double error = 0.0;
  double error_r = 0.0;
  double error_dr = 0.0;
  double error_d2r = 0.0;
  bool converged = false;
};
ResolventJet resolvent_zero_jet(const LevyExponent& exp, std::complex<double> z,
                                const QuadratureSpec& spec = {});

//! |r_q(z - x) - r_p(z - x) + (q - p) int r_q(y - x) r_p(z - y) dy|, the
//! y-integral by adaptive quadrature over the whole line.
QuadratureResult resolvent_equation_residual(const LevyExponent& exp, double q, double p, double x,
                                             double z, const QuadratureSpec& spec = {});

//! Spec for the outer integral of a double quadrature whose integrand is
//! itself computed to spec: tolerances loosened 100 fold.
QuadratureSpec outer_spec(const QuadratureSpec& spec);

} // namespace levy
