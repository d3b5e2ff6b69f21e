#pragma once

#include "levy/exponent.hpp"
#include "levy/harmonic.hpp"
#include "levy/quadrature.hpp"
#include "levy/report.hpp"

#include <functional>
#include <vector>

namespace levy {

//! Verdict of a sequence of truncated integrals over successive decades:
//! the ratio of the last two increments is >= 0.97 (diverges), <= 0.9
//! (converges) or in between (undecided). Both of the last two ratios must
//! agree.
enum class Divergence
{
  converges,
  diverges,
  undecided
};

struct DivergenceProbe
{
  Divergence verdict = Divergence::undecided;
  std::vector<double> increments;
  double last_ratio = 0.0;
};

//! increment(k) for k = 0..count-1 is the integral over the k-th decade
//! moving toward the end under test.
DivergenceProbe probe_divergence(const std::function<double(int)>& increment, int count = 7);

//! int_0^inf dlambda / (q + theta) < inf.
ConditionReport check_L1prime(const LevyExponent& exp, double q = 1.0, const QuadratureSpec& spec = {});

//! v > 0 or int_(-1,1) |x| nu(dx) = inf.
ConditionReport check_L2(const LevyTriplet& triplet);

//! int_0^inf (|theta'| + |omega'|)(lambda^2 ^ 1) / (theta^2 + omega^2) < inf.
ConditionReport check_L3(const LevyExponent& exp, const QuadratureSpec& spec = {});

struct ThetaLemmaReport
{
  ConditionReport i;
  ConditionReport ii;
  ConditionReport iii;

  bool all_hold() const { return i.holds() && ii.holds() && iii.holds(); }
};

//! (i) theta -> inf, (ii) int_0^1 lambda^2/theta + int_1^inf 1/theta < inf,
//! (iii) q r_q(0) -> 0 with the fitted decay exponent over q = 1 .. 1e-5.
ThetaLemmaReport check_theta_lemma(const LevyExponent& exp, const QuadratureSpec& spec = {});

//! Samples theta'/lambda^(alpha-1) and omega'/lambda^(alpha-1) over
//! [1e-6, 1e6] against the bounds and evaluates condition (iii). Verdict
//! inconclusive when the lower omega constant is not positive.
ConditionReport check_AL(const ALBounds& bounds, const LevyExponent& exp,
                         const QuadratureSpec& spec = {});

//! Samples theta/lambda^alpha in [c_theta_, c_theta^] and omega/lambda^alpha
//! in [c_omega_, c_omega^] with c_omega_ > 0.
ConditionReport check_LA_rho_bounds(const ALBounds& bounds, const LevyExponent& exp);

namespace synthetic {

//! theta = lambda^2/(1 + lambda^2), omega = 0: the exponent of the
//! compound Poisson law with nu(dx) = e^-|x|/2 dx.
LevyExponent bounded_theta();
LevyTriplet bounded_theta_triplet();

//! theta = log(1 + lambda), omega = 0.
LevyExponent log_theta();

} // namespace synthetic

} // namespace levy
