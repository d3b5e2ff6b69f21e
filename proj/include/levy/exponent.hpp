#pragma once

#include "levy/quadrature.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace levy {

struct StableParams;

//! One side of a Levy density, g(|x|) for x on that side. The declared
//! exponents say g(u) ~ u^-at_zero as u -> 0 and g(u) ~ u^-at_infinity as
//! u -> inf.
struct LevyDensity
{
  RealFunction density;
  double at_zero = 0.0;
  double at_infinity = 0.0;
  //! Set when g(u) = c u^-(1 + alpha) exactly; enables derivatives.
  bool power_law = false;

  bool empty() const { return !density; }
};

//! c u^-(1 + alpha) on one side.
LevyDensity power_law_density(double c, double alpha);

//! c e^-(rate u) on one side.
LevyDensity exponential_density(double c, double rate);

//! Characteristic triplet (b, v, nu) with nu = positive side on (0, inf) and
//! negative side on (-inf, 0), compensated on |x| < 1.
struct LevyTriplet
{
  double b = 0.0;
  double v = 0.0;
  LevyDensity positive;
  LevyDensity negative;

  //! Throws InvalidParameter unless v >= 0, the densities are nonnegative on
  //! a sample grid and the declared exponents make int (x^2 ^ 1) nu finite.
  void validate() const;
};

//! Strictly stable triplet: nu = c+ x^-(1+a) on (0, inf), c- |x|^-(1+a) on
//! (-inf, 0), and the drift b = (c+ - c-)/(a - 1) that removes the
//! compensation at |x| = 1.
LevyTriplet stable_triplet(double alpha, double c_plus, double c_minus);

struct ThetaOmega
{
  double theta = 0.0;
  double omega = 0.0;
};

//! Psi(lambda) = theta(lambda) + i omega(lambda), given on lambda > 0 and
//! extended by parity. Immutable after construction.
class LevyExponent
{
public:
  struct Parts
  {
    RealFunction theta;
    RealFunction omega;
    RealFunction theta_prime;
    RealFunction omega_prime;
    std::optional<double> alpha_hint;
    std::string label;
    //! omega is identically 0; lets callers drop the odd parts.
    bool symmetric = false;
  };

  explicit LevyExponent(Parts parts);

  ThetaOmega eval(double lambda) const;
  double theta(double lambda) const;
  double omega(double lambda) const;
  //! Derivatives extended by parity (theta' odd, omega' even).
  double theta_prime(double lambda) const;
  double omega_prime(double lambda) const;

  bool has_derivatives() const { return static_cast<bool>(parts_->theta_prime); }
  bool symmetric() const { return parts_->symmetric; }
  const std::optional<double>& alpha_hint() const { return parts_->alpha_hint; }
  const std::string& label() const { return parts_->label; }

  //! alpha_hint when present, else the slope of log theta against log lambda
  //! over [1e2, 1e6].
  double growth_exponent() const;

private:
  std::shared_ptr<const Parts> parts_;
};

//! theta = c_theta lambda^alpha, omega = c_omega lambda^alpha.
LevyExponent from_stable(const StableParams& params);

//! theta = v lambda^2, omega = 0.
LevyExponent brownian(double v = 1.0);

//! theta and omega by quadrature of the Levy-Khintchine integrals, split at
//! |x| = 1. Evaluation throws NumericFailure (where = lambda) when a
//! quadrature does not converge.
LevyExponent from_triplet(const LevyTriplet& triplet, const QuadratureSpec& spec = {});

//! Result of sampling the exponent invariants.
struct ExponentCheck
{
  bool nonnegative = true;
  bool parity = true;
  bool vanishes_at_zero = true;
  bool derivatives_consistent = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

//! Samples theta >= 0 and parity on a log grid, theta(1e-8), omega(1e-8)
//! within tol, and central differences of theta, omega against the given
//! derivatives (relative tolerance tol_derivative).
ExponentCheck check_invariants(const LevyExponent& exp, double tol = 1e-6,
                               double tol_derivative = 1e-6);

} // namespace levy
