#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace levy {

//! Tolerances and hints shared by every integral in the library.
struct QuadratureSpec
{
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  //! Total number of Gauss-Kronrod panels one integral may evaluate.
  int max_subdivisions = 10000;
  //! Power p with |f(lambda)| <~ lambda^-p; only used to reject p <= 1 early.
  std::optional<double> tail_decay_hint;
  //! The x in cos(lambda x), recorded for reporting.
  std::optional<double> oscillation_freq;
  //! Point separating the panels graded toward 0 from those graded toward
  //! infinity; also the smallest start of an oscillatory tail.
  double characteristic_scale = 1.0;

  void validate() const;
  QuadratureSpec with_tolerances(double rel, double abs) const;
};

template <class V>
struct BasicQuadratureResult
{
  V value{};
  double error_estimate = 0.0;
  bool converged = false;
  int subdivisions_used = 0;
  //! Largest abscissa at which the integrand was sampled.
  double truncation_point = 0.0;
};

using QuadratureResult = BasicQuadratureResult<double>;
using ComplexQuadratureResult = BasicQuadratureResult<std::complex<double>>;

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<std::complex<double>(double)>;

enum class Kernel
{
  cos,
  sin,
  one_minus_cos
};

//! int_0^inf f. Panels [s 2^k, s 2^(k+1)] toward infinity and
//! [s 2^-(k+1), s 2^-k] toward 0 (s = characteristic_scale), each by adaptive
//! Gauss-Kronrod 10/21. The remainder beyond the last panel at either end is
//! extrapolated from the ratio of the last two panel integrals, which is
//! exact for power laws; the change of the extrapolated total between steps
//! is the truncation error estimate. The integrand is never evaluated at 0.
QuadratureResult integrate(const RealFunction& f, const QuadratureSpec& spec);

//! int_a^b f with b > a, finite. Graded toward both endpoints, so algebraic
//! endpoint singularities and cusps are handled.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureSpec& spec);

//! int_a^inf f for a >= 0.
QuadratureResult integrate_from(const RealFunction& f, double a,
                                const QuadratureSpec& spec);

//! int_-inf^inf f, split at the sorted breakpoints.
QuadratureResult integrate_line(const RealFunction& f,
                                std::vector<double> breakpoints,
                                const QuadratureSpec& spec);

//! int_0^inf f(lambda) k(lambda x) dlambda. The head [0, A] ends on a zero of
//! the kernel past max(2 pi/|x|, characteristic_scale); beyond A the integral
//! is a series of half-period panels summed with the Wynn epsilon algorithm.
//! one_minus_cos is evaluated as (1 - cos) on the head and as
//! int_A f - int_A f cos on the tail, so f may be non-integrable at 0.
QuadratureResult integrate_oscillatory(const RealFunction& f, Kernel kernel,
                                       double x, const QuadratureSpec& spec);

//! Same as integrate_oscillatory over [a, inf), a >= 0.
QuadratureResult integrate_oscillatory_from(const RealFunction& f,
                                            Kernel kernel, double x, double a,
                                            const QuadratureSpec& spec);

ComplexQuadratureResult integrate_complex(const ComplexFunction& f,
                                          const QuadratureSpec& spec);

//! error_estimate <= max(abs_tol, rel_tol |value|) under spec, whatever
//! spec the result was computed with.
template <class V>
bool meets(const BasicQuadratureResult<V>& r, const QuadratureSpec& spec)
{
  using std::abs;
  return r.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * abs(r.value));
}

//! Wynn epsilon extrapolation of a sequence of partial sums. Returns the
//! estimate of the limit and an error estimate from the last two
//! extrapolants.
template <class V>
std::pair<V, double> wynn_epsilon(const std::vector<V>& partial_sums);

} // namespace levy
