#pragma once

#include "levy/exponent.hpp"
#include "levy/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace levy::detail {

//! spec with characteristic_scale moved to the lambda where theta reaches
//! level, estimated from the growth exponent.
inline QuadratureSpec frequency_scaled(const QuadratureSpec& spec, const LevyExponent& exp,
                                       double level)
{
  QuadratureSpec s = spec;
  const double a = exp.growth_exponent();
  const double t1 = exp.theta(1.0);
  if (a > 0.0 && t1 > 0.0) {
    const double l = std::pow(level / t1, 1.0 / a);
    if (std::isfinite(l) && l > 0.0)
      s.characteristic_scale = spec.characteristic_scale * std::clamp(l, 1e-6, 1e6);
  }
  return s;
}

//! factor (a + sign b), errors added. With a spec, a sum whose parts missed
//! their own relative targets still converges when the total meets spec.
inline QuadratureResult merge(const QuadratureResult& a, const QuadratureResult& b, double sign,
                              double factor, const QuadratureSpec* spec = nullptr)
{
  QuadratureResult r;
  r.value = factor * (a.value + sign * b.value);
  r.error_estimate = std::abs(factor) * (a.error_estimate + b.error_estimate);
  r.converged = a.converged && b.converged;
  r.subdivisions_used = a.subdivisions_used + b.subdivisions_used;
  r.truncation_point = std::max(a.truncation_point, b.truncation_point);
  if (spec && !r.converged && std::isfinite(r.error_estimate))
    r.converged = meets(r, *spec);
  return r;
}

} // namespace levy::detail
