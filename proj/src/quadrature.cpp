#include "levy/quadrature.hpp"

#include "levy/errors.hpp"
#include "levy/special.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace levy {

void QuadratureSpec::validate() const
{
  if (!(rel_tol > 0.0))
    throw InvalidParameter("rel_tol must be positive");
  if (!(abs_tol > 0.0))
    throw InvalidParameter("abs_tol must be positive");
  if (max_subdivisions < 1)
    throw InvalidParameter("max_subdivisions must be at least 1");
  if (!(characteristic_scale > 0.0))
    throw InvalidParameter("characteristic_scale must be positive");
}

QuadratureSpec QuadratureSpec::with_tolerances(double rel, double abs) const
{
  QuadratureSpec s = *this;
  s.rel_tol = rel;
  s.abs_tol = abs;
  return s;
}

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double inf = std::numeric_limits<double>::infinity();

using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using gauss10 = boost::math::quadrature::gauss<double, 10>;

struct Budget
{
  int remaining;
  int used = 0;

  bool take()
  {
    if (remaining <= 0)
      return false;
    --remaining;
    ++used;
    return true;
  }
};

template <class V>
struct Panel
{
  double a;
  double b;
  V value;
  double error;
  //! Rounding floor of the error estimate.
  double floor;
};

// Gauss-Kronrod 10/21 on [a, b] with the QUADPACK error heuristic.
template <class V, class F>
Panel<V> gk21(const F& f, double a, double b)
{
  const auto& xk = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss10::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  std::array<V, 21> fv;
  fv[0] = f(c);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fv[2 * i - 1] = f(c - h * xk[i]);
    fv[2 * i] = f(c + h * xk[i]);
  }

  V k = fv[0] * wk[0];
  V g{};
  double resabs = std::abs(fv[0]) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const V pair = fv[2 * i - 1] + fv[2 * i];
    k += pair * wk[i];
    resabs += (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i])) * wk[i];
    if (i % 2 == 1)
      g += pair * wg[i / 2];
  }
  const V mean = k * 0.5;
  double resasc = std::abs(fv[0] - mean) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i)
    resasc += (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean)) * wk[i];

  double err = std::abs((k - g) * h);
  resasc *= std::abs(h);
  resabs *= std::abs(h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * eps * resabs;
  err = std::max(err, floor);

  Panel<V> p{ a, b, k * h, err, floor };
  if (!std::isfinite(std::abs(p.value)) || !std::isfinite(p.error))
    p.error = inf;
  return p;
}

template <class V>
struct Segment
{
  V value{};
  //! Truncation error; rounding is kept apart in floor2.
  double error = 0.0;
  bool converged = true;
  //! Sum of squared per-panel rounding floors.
  double floor2 = 0.0;
};

// Globally adaptive bisection, worst panel first.
template <class V, class F>
Segment<V> adaptive(const F& f, double a, double b, double abs_tol,
                    double rel_tol, Budget& budget)
{
  if (!budget.take())
    return { V{}, inf, false };
  std::vector<Panel<V>> heap{ gk21<V>(f, a, b) };
  const auto worse = [](const Panel<V>& l, const Panel<V>& r) {
    return l.error < r.error;
  };

  V total = heap.front().value;
  double err = heap.front().error;
  bool converged = true;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    const Panel<V> worst = heap.front();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!std::isfinite(worst.error) && !std::isfinite(std::abs(worst.value))) {
      converged = false;
      break;
    }
    // the worst panel is limited by rounding, so bisection cannot help
    if (worst.error <= 2.0 * worst.floor)
      break;
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a <= 64.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      converged = false;
      break;
    }
    if (budget.remaining < 2) {
      converged = false;
      break;
    }
    budget.take();
    budget.take();
    std::pop_heap(heap.begin(), heap.end(), worse);
    heap.pop_back();
    const Panel<V> left = gk21<V>(f, worst.a, mid);
    const Panel<V> right = gk21<V>(f, mid, worst.b);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    if (!std::isfinite(err)) {
      err = 0.0;
      for (const auto& p : heap)
        err += p.error;
    }
  }

  // deterministic final sum, left to right
  std::sort(heap.begin(), heap.end(),
            [](const Panel<V>& l, const Panel<V>& r) { return l.a < r.a; });
  total = V{};
  err = 0.0;
  double floor2 = 0.0;
  for (const auto& p : heap) {
    total += p.value;
    err += p.error - p.floor;
    floor2 += p.floor * p.floor;
  }
  if (!std::isfinite(err) || !std::isfinite(std::abs(total)))
    converged = false;
  return { total, err, converged, floor2 };
}

template <class V>
struct Accum
{
  V value{};
  double error = 0.0;
  bool converged = true;
  double reach = 0.0;
  double floor2 = 0.0;
};

double target_for(const QuadratureSpec& spec, double magnitude)
{
  return std::max(spec.abs_tol, spec.rel_tol * magnitude);
}

// Sum of panels bounds(0), bounds(1), ... whose integrals shrink roughly
// geometrically. The remainder is extrapolated from the ratio of the last
// two panels.
template <class V, class F, class Bounds>
Accum<V> graded(const F& f, Bounds bounds, int kmax, bool reach_low,
                const QuadratureSpec& spec, Budget& budget)
{
  Accum<V> acc;
  std::vector<V> terms;
  V sum{};
  V total{};
  V prev_total{};
  double panel_err = 0.0;
  double prev_delta = inf;
  V remainder{};
  double delta = inf;
  double largest = 0.0;

  for (int k = 0; k <= kmax; ++k) {
    const auto [lo, hi] = bounds(k);
    if (!(hi > lo)) {
      // graded down to the resolution of double
      acc.value = sum;
      acc.error = panel_err + (terms.empty() ? 0.0 : std::abs(terms.back()));
      return acc;
    }
    const Segment<V> seg =
      adaptive<V>(f, lo, hi, spec.abs_tol / 64.0, spec.rel_tol / 8.0, budget);
    if (!seg.converged)
      acc.converged = false;
    acc.reach = reach_low ? lo : hi;
    sum += seg.value;
    panel_err += seg.error;
    acc.floor2 += seg.floor2;
    terms.push_back(seg.value);
    largest = std::max(largest, std::abs(seg.value));
    if (!std::isfinite(panel_err)) {
      acc.value = sum;
      acc.error = inf;
      acc.converged = false;
      return acc;
    }
    if (budget.remaining <= 0) {
      acc.value = sum;
      acc.error = panel_err + std::abs(seg.value);
      acc.converged = false;
      return acc;
    }

    bool have_rem = false;
    remainder = V{};
    if (k >= 2 && std::abs(terms[k - 1]) > 0.0) {
      const V r = terms[k] / terms[k - 1];
      if (std::abs(r) < 0.99) {
        remainder = terms[k] * r / (V(1.0) - r);
        have_rem = true;
      }
    }
    total = sum + remainder;
    delta = k >= 1 ? std::abs(total - prev_total) : inf;
    const double target = target_for(spec, std::abs(total)) / 4.0;

    // Small panels only end the sum once the mass has been passed; grading
    // may start in a region where the integrand is still negligible.
    const double recent = std::abs(terms[k]) + std::abs(terms[k - (k > 0)]);
    if (k >= 3 && recent <= 1e-3 * target && recent < 1e-3 * largest) {
      acc.value = sum;
      acc.error = panel_err + std::abs(terms[k]);
      return acc;
    }
    if (have_rem && k >= 3 && delta <= target && prev_delta <= target) {
      acc.value = total;
      acc.error = panel_err + std::max(delta, prev_delta);
      return acc;
    }
    prev_delta = delta;
    prev_total = total;
  }
  acc.value = total;
  acc.error = panel_err + std::max(delta, std::abs(remainder));
  // an integrand that vanished on every panel
  acc.converged = largest == 0.0;
  return acc;
}

template <class V, class F>
Accum<V> toward_zero(const F& f, double origin, double width,
                     const QuadratureSpec& spec, Budget& budget, int kmax = 220)
{
  // panels [o + w 2^-(k+1), o + w 2^-k]
  auto bounds = [=](int k) {
    const double hi = origin + std::ldexp(width, -k);
    const double lo = origin + std::ldexp(width, -k - 1);
    return std::pair<double, double>{ lo, hi };
  };
  return graded<V>(f, bounds, kmax, true, spec, budget);
}

template <class V, class F>
Accum<V> toward_end(const F& f, double end, double width,
                    const QuadratureSpec& spec, Budget& budget, int kmax)
{
  // panels [e - w 2^-k, e - w 2^-(k+1)]
  auto bounds = [=](int k) {
    const double lo = end - std::ldexp(width, -k);
    const double hi = end - std::ldexp(width, -k - 1);
    return std::pair<double, double>{ lo, hi };
  };
  return graded<V>(f, bounds, kmax, false, spec, budget);
}

template <class V, class F>
Accum<V> toward_infinity(const F& f, double origin, double scale,
                         const QuadratureSpec& spec, Budget& budget)
{
  // panels [o + s (2^k - 1), o + s (2^(k+1) - 1)]
  auto bounds = [=](int k) {
    const double lo = origin + scale * (std::ldexp(1.0, k) - 1.0);
    const double hi = origin + scale * (std::ldexp(1.0, k + 1) - 1.0);
    return std::pair<double, double>{ lo, hi };
  };
  return graded<V>(f, bounds, 170, false, spec, budget);
}

template <class V>
BasicQuadratureResult<V> finish(const QuadratureSpec& spec, const Accum<V>& acc,
                                const Budget& budget)
{
  BasicQuadratureResult<V> r;
  r.value = acc.value;
  // rounding floors are independent between panels
  r.error_estimate = acc.error + std::sqrt(acc.floor2);
  r.subdivisions_used = budget.used;
  r.truncation_point = acc.reach;
  r.converged = acc.converged && std::isfinite(r.error_estimate) &&
                r.error_estimate <= target_for(spec, std::abs(acc.value));
  if (spec.tail_decay_hint && *spec.tail_decay_hint <= 1.0)
    r.converged = false;
  return r;
}

template <class V>
Accum<V> combine(const Accum<V>& l, const Accum<V>& r, double sign = 1.0)
{
  Accum<V> c;
  c.value = l.value + r.value * sign;
  c.error = l.error + r.error;
  c.floor2 = l.floor2 + r.floor2;
  c.converged = l.converged && r.converged;
  c.reach = std::max(l.reach, r.reach);
  return c;
}

template <class V, class F>
Accum<V> half_line(const F& f, const QuadratureSpec& spec, Budget& budget)
{
  const double s = spec.characteristic_scale;
  return combine(toward_zero<V>(f, 0.0, s, spec, budget),
                 toward_infinity<V>(f, s, s, spec, budget));
}

template <class V, class F>
Accum<V> finite(const F& f, double a, double b, const QuadratureSpec& spec,
                Budget& budget)
{
  const double half = 0.5 * (b - a);
  return combine(toward_zero<V>(f, a, half, spec, budget, 60),
                 toward_end<V>(f, b, half, spec, budget, 60));
}

template <class V, class F>
Accum<V> from(const F& f, double a, const QuadratureSpec& spec, Budget& budget)
{
  if (a == 0.0)
    return half_line<V>(f, spec, budget);
  const double s = spec.characteristic_scale;
  return combine(finite<V>(f, a, a + s, spec, budget),
                 toward_infinity<V>(f, a + s, s, spec, budget));
}

// Half-period panels [A + n h, A + (n + 1) h] summed with epsilon
// acceleration. `panel(n)` integrates panel n including its sign.
template <class PanelFn>
Accum<double> alternating(PanelFn panel, double start, double h,
                          const QuadratureSpec& spec, Budget& budget)
{
  constexpr int max_terms = 4000;
  constexpr std::size_t window = 40;
  Accum<double> acc;
  std::vector<double> sums;
  double sum = 0.0;
  double panel_err = 0.0;
  double prev_est = 0.0;
  double prev_delta = inf;
  double last_term = 0.0;
  double est = 0.0;
  double delta = inf;
  double magnitude = 0.0;

  for (int n = 0; n < max_terms; ++n) {
    const Segment<double> seg = panel(n);
    if (!seg.converged)
      acc.converged = false;
    sum += seg.value;
    panel_err += seg.error;
    acc.floor2 += seg.floor2;
    magnitude += std::abs(seg.value);
    sums.push_back(sum);
    // the partial sums cannot be resolved below their rounding noise
    const double noise = 2.0 * std::sqrt(acc.floor2) + 16.0 * eps * magnitude;
    acc.reach = start + (n + 1) * h;
    if (!std::isfinite(panel_err) || budget.remaining <= 0) {
      acc.value = sum;
      acc.error = inf;
      acc.converged = false;
      return acc;
    }

    const double target = std::max(target_for(spec, std::abs(sum)) / 4.0, noise);
    if (n >= 3 && std::abs(seg.value) + std::abs(last_term) <= 1e-3 * target) {
      acc.value = sum;
      acc.error = panel_err + std::abs(seg.value);
      return acc;
    }
    last_term = seg.value;
    if (n < 5)
      continue;

    const std::size_t take = std::min(sums.size(), window);
    const std::vector<double> tail(sums.end() - static_cast<std::ptrdiff_t>(take),
                                   sums.end());
    double eps_err = 0.0;
    std::tie(est, eps_err) = wynn_epsilon(tail);
    delta = std::abs(est - prev_est);
    const double tgt = std::max(target_for(spec, std::abs(est)) / 4.0, noise);
    if (delta <= tgt && prev_delta <= tgt) {
      acc.value = est;
      acc.error = panel_err + std::max({ delta, prev_delta, std::min(eps_err, tgt) });
      return acc;
    }
    prev_delta = delta;
    prev_est = est;
  }
  acc.value = est;
  acc.error = panel_err + delta;
  acc.converged = false;
  return acc;
}

Accum<double> oscillatory(const RealFunction& f, Kernel kernel, double x,
                          double a, const QuadratureSpec& spec, Budget& budget)
{
  const double h = pi / x;
  const double offset = kernel == Kernel::sin ? 0.0 : 0.5 * h;
  const double lam0 = std::max({ a + h, 2.0 * h, spec.characteristic_scale });
  const double m = std::ceil((lam0 - offset) / h);
  const double start = offset + m * h;

  auto head_f = [&](double lam) {
    const double t = lam * x;
    switch (kernel) {
      case Kernel::cos:
        return f(lam) * std::cos(t);
      case Kernel::sin:
        return f(lam) * std::sin(t);
      case Kernel::one_minus_cos: {
        const double s = std::sin(0.5 * t);
        return f(lam) * 2.0 * s * s;
      }
    }
    return 0.0;
  };
  const Accum<double> head = a == 0.0
                               ? toward_zero<double>(head_f, 0.0, start, spec, budget)
                               : finite<double>(head_f, a, start, spec, budget);

  // On panel n the kernel is +-sin(d x), d in [0, h]; phases are taken
  // relative to the panel start so they stay exact far out.
  const bool m_odd = std::fmod(m, 2.0) != 0.0;
  auto panel = [&](int n) {
    const double lo = start + n * h;
    auto g = [&](double d) { return f(lo + d) * std::sin(d * x); };
    Segment<double> s =
      adaptive<double>(g, 0.0, h, spec.abs_tol / 64.0, spec.rel_tol / 8.0, budget);
    bool negative = (n % 2 == 1) != m_odd;
    if (kernel != Kernel::sin)
      negative = !negative;
    if (negative)
      s.value = -s.value;
    return s;
  };
  Accum<double> tail = alternating(panel, start, h, spec, budget);
  if (kernel == Kernel::one_minus_cos)
    tail = combine(from<double>(f, start, spec, budget), tail, -1.0);
  return combine(head, tail);
}

// Runs `run` at the caller's tolerances and, when the result misses them
// by a bounded factor, once more with the per-panel tolerances tightened by
// that factor. Panel tolerances are relative to each panel, so a total that
// cancels (oscillatory integrands) needs the second pass. The verdict is
// always taken against the caller's spec.
template <class V, class Run>
BasicQuadratureResult<V> refined(const QuadratureSpec& spec, Run run)
{
  Budget budget{ spec.max_subdivisions };
  BasicQuadratureResult<V> first = finish(spec, run(spec, budget), budget);
  if (first.converged || !std::isfinite(first.error_estimate) || budget.remaining <= 0)
    return first;
  const double shortfall = target_for(spec, std::abs(first.value)) / first.error_estimate;
  if (!(shortfall > 1e-4))
    return first;
  const QuadratureSpec inner =
    spec.with_tolerances(0.5 * shortfall * spec.rel_tol, 0.5 * shortfall * spec.abs_tol);
  return finish(spec, run(inner, budget), budget);
}

} // namespace

template <class V>
std::pair<V, double> wynn_epsilon(const std::vector<V>& s)
{
  const std::size_t n = s.size();
  if (n == 0)
    return { V{}, inf };
  if (n < 3)
    return { s.back(), n == 2 ? std::abs(s[1] - s[0]) : inf };

  std::vector<V> prev(n + 1, V{});
  std::vector<V> cur(s);
  V best = s.back();
  V best_prev = s[n - 2];
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<V> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const V diff = cur[j + 1] - cur[j];
      const double scale = std::max(std::abs(cur[j + 1]), std::abs(cur[j]));
      if (std::abs(diff) <= 4.0 * eps * scale) {
        // column converged to rounding
        if (k % 2 == 1)
          return { cur[j + 1], std::abs(best - cur[j + 1]) };
        return { best, std::abs(best - best_prev) };
      }
      next[j] = prev[j + 1] + V(1.0) / diff;
    }
    if (k % 2 == 0) {
      best_prev = next.size() >= 2 ? next[next.size() - 2] : best;
      best = next.back();
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (cur.size() < 2)
      break;
  }
  return { best, std::abs(best - best_prev) };
}

template std::pair<double, double> wynn_epsilon(const std::vector<double>&);
template std::pair<std::complex<double>, double>
wynn_epsilon(const std::vector<std::complex<double>>&);

QuadratureResult integrate(const RealFunction& f, const QuadratureSpec& spec)
{
  spec.validate();
  return refined<double>(spec, [&](const QuadratureSpec& s, Budget& budget) {
    return half_line<double>(f, s, budget);
  });
}

QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureSpec& spec)
{
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InvalidParameter("finite integrate needs finite limits");
  if (a == b)
    return { 0.0, 0.0, true, 0, b };
  if (b < a) {
    QuadratureResult r = integrate(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  return refined<double>(spec, [&](const QuadratureSpec& s, Budget& budget) {
    return finite<double>(f, a, b, s, budget);
  });
}

QuadratureResult integrate_from(const RealFunction& f, double a,
                                const QuadratureSpec& spec)
{
  spec.validate();
  return refined<double>(spec, [&](const QuadratureSpec& s, Budget& budget) {
    return from<double>(f, a, s, budget);
  });
}

QuadratureResult integrate_line(const RealFunction& f,
                                std::vector<double> breakpoints,
                                const QuadratureSpec& spec)
{
  spec.validate();
  if (breakpoints.empty())
    breakpoints.push_back(0.0);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  const double lo = breakpoints.front();
  const double hi = breakpoints.back();
  auto left = [&](double u) { return f(lo - u); };
  auto right = [&](double u) { return f(hi + u); };
  return refined<double>(spec, [&](const QuadratureSpec& s, Budget& budget) {
    Accum<double> acc = half_line<double>(left, s, budget);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
      acc = combine(acc, finite<double>(f, breakpoints[i], breakpoints[i + 1], s, budget));
    return combine(acc, half_line<double>(right, s, budget));
  });
}

QuadratureResult integrate_oscillatory_from(const RealFunction& f,
                                            Kernel kernel, double x, double a,
                                            const QuadratureSpec& spec)
{
  spec.validate();
  if (!(a >= 0.0))
    throw InvalidParameter("oscillatory integrals start at a >= 0");
  if (x == 0.0) {
    if (kernel == Kernel::cos)
      return a == 0.0 ? integrate(f, spec) : integrate_from(f, a, spec);
    return { 0.0, 0.0, true, 0, a };
  }
  if (x < 0.0) {
    QuadratureResult r = integrate_oscillatory_from(f, kernel, -x, a, spec);
    if (kernel == Kernel::sin)
      r.value = -r.value;
    return r;
  }
  return refined<double>(spec, [&](const QuadratureSpec& s, Budget& budget) {
    return oscillatory(f, kernel, x, a, s, budget);
  });
}

QuadratureResult integrate_oscillatory(const RealFunction& f, Kernel kernel,
                                       double x, const QuadratureSpec& spec)
{
  return integrate_oscillatory_from(f, kernel, x, 0.0, spec);
}

ComplexQuadratureResult integrate_complex(const ComplexFunction& f,
                                          const QuadratureSpec& spec)
{
  spec.validate();
  return refined<std::complex<double>>(spec, [&](const QuadratureSpec& s, Budget& budget) {
    return half_line<std::complex<double>>(f, s, budget);
  });
}

} // namespace levy
