//! Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include "levy/conditions.hpp"
#include "levy/duration.hpp"
#include "levy/harmonic.hpp"
#include "levy/resolvent.hpp"
#include "levy/stable.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace levy;

namespace {

// r_1(0) at alpha = 1.5, c_theta = 1, beta = 0: mpmath quad of 1/(1 + l^1.5) / pi
constexpr double c_r_oracle = 0.769800358919501019345;
// h0(1) for the symmetric law above: sqrt(2/pi)
constexpr double h0_sym_oracle = 0.797884560802865355880;

struct Outcome
{
  bool pass = true;
  std::string summary;
  std::string csv;
};

class Csv
{
public:
  void row(const std::vector<double>& values)
  {
    for (std::size_t i = 0; i < values.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%s%.16e", i ? "," : "", values[i]);
      text_ += buf;
    }
    text_ += "\n";
  }
  void line(const std::string& line) { text_ += line + "\n"; }
  const std::string& text() const { return text_; }

private:
  std::string text_;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

StableParams stable(double alpha, double beta) { return StableParams::from_skewness(alpha, 1.0, beta); }

using Seconds = std::chrono::duration<double>;

Outcome c1_golden()
{
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  Csv csv;
  double worst = 0.0;
  bool conv = true;
  for (double alpha : { 1.2, 1.5, 1.8 })
    for (double beta : { -0.5, 0.0, 0.5 }) {
      const auto p = stable(alpha, beta);
      const auto e = from_stable(p);
      for (double x : { -4.0, -1.0, -0.25, 0.25, 1.0, 4.0 }) {
        const auto h = h_0(e, x);
        const double err = std::abs(h.value / h0_closed(p, x) - 1.0);
        worst = std::max(worst, err);
        conv = conv && h.converged;
        csv.row({ alpha, beta, x, h.value, err });
      }
    }
  const double oracle = std::abs(h_0(from_stable(stable(1.5, 0.0)), 1.0).value / h0_sym_oracle - 1.0);
  const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
  o.pass = conv && worst <= 1e-6 && oracle <= 1e-9 && secs <= 30.0;
  o.summary = fmt("max rel err %.2e <= 1e-6 over 54 points, sqrt(2/pi) oracle rel err %.1e, %.1f s <= 30 s",
                  worst, oracle, secs);
  o.csv = csv.text();
  return o;
}

Outcome c2_skewness()
{
  const auto e = from_stable(stable(1.5, 0.5));
  Csv csv;
  double worst = 0.0;
  for (double x : { 0.25, 1.0, 4.0 }) {
    const double r = h_0(e, -x).value / h_0(e, x).value;
    worst = std::max(worst, std::abs(r - 3.0));
    csv.row({ x, r });
  }
  return { worst <= 1e-6, fmt("max |h0(-x)/h0(x) - 3| = %.2e <= 1e-6", worst), csv.text() };
}

Outcome c3_one_sided()
{
  const auto e = from_stable(stable(1.5, 1.0));
  Csv csv;
  double worst = 0.0;
  for (double x : { 0.5, 1.0, 2.0 }) {
    const double v = h_0(e, x).value;
    worst = std::max(worst, std::abs(v));
    csv.row({ x, v });
  }
  const double neg = h_0(e, -1.0).value;
  csv.row({ -1.0, neg });
  return { worst <= 1e-8 && neg > 0.0, fmt("max |h0(x>0)| = %.2e <= 1e-8, h0(-1) = %.6f > 0", worst, neg),
           csv.text() };
}

Outcome c4_harmonicity()
{
  const auto start = std::chrono::steady_clock::now();
  const auto p = stable(1.5, 0.5);
  const auto e = from_stable(p);
  const auto h = stable_h0_function(p);
  Csv csv;
  double worst = 0.0;
  bool pass = true;
  for (double q : { 0.5, 2.0 })
    for (double x : { -1.0, 0.5 }) {
      const auto r = harmonicity_residual(e, h, p.alpha - 1.0, q, x);
      const double bound = 1e-4 * (1.0 + h(x));
      pass = pass && r.converged && r.value <= bound;
      worst = std::max(worst, r.value / bound);
      csv.row({ q, x, r.value, bound });
    }
  const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
  pass = pass && secs <= 300.0;
  return { pass, fmt("max residual / (1e-4 (1 + h0)) = %.2e <= 1, %.1f s <= 300 s", worst, secs),
           csv.text() };
}

Outcome c5_hp()
{
  const auto e = from_stable(stable(1.5, 0.5));
  Csv csv;
  double worst = 0.0;
  bool pass = true;
  for (double x : { 0.0, 1.0, -1.0 }) {
    const auto r = hp_identity_residual(e, 2.0, 1.0, x);
    pass = pass && r.converged && r.value <= 1e-4;
    worst = std::max(worst, r.value);
    csv.row({ x, r.value });
  }
  return { pass, fmt("max residual %.2e <= 1e-4 at (q, p) = (2, 1)", worst), csv.text() };
}

Outcome c6_resolvent()
{
  const auto p = stable(1.5, 0.0);
  const auto e = from_stable(p);
  Csv csv;
  std::vector<double> scaled;
  for (double q : { 0.1, 1.0, 10.0 }) {
    const double r = resolvent_density(e, q, 0.0).value;
    scaled.push_back(r * std::pow(q, 1.0 - 1.0 / p.alpha));
    csv.row({ q, r, scaled.back() });
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  const double variation = (*hi - *lo) / *lo;
  const double r1 = resolvent_density(e, 1.0, 0.0).value;
  const double err = std::abs(r1 / c_r_oracle - 1.0);
  csv.row({ r1, err });
  return { variation <= 1e-8 && err <= 1e-8,
           fmt("rel variation %.2e <= 1e-8, r_1(0) = %.14f vs oracle c_r rel err %.2e <= 1e-8",
               variation, r1, err),
           csv.text() };
}

Outcome c7_theta_iii()
{
  Csv csv;
  double worst = 0.0;
  bool pass = true;
  for (double alpha : { 1.2, 1.5, 1.8 })
    for (double beta : { -0.5, 0.0, 0.5 }) {
      const auto r = check_theta_lemma(from_stable(stable(alpha, beta)));
      const double fitted = r.iii.evidence.back().value;
      const double dev = std::abs(fitted - 1.0 / alpha);
      worst = std::max(worst, dev);
      pass = pass && r.iii.holds() && dev <= 0.02;
      csv.row({ alpha, beta, fitted });
    }
  return { pass, fmt("max |fitted - 1/alpha| = %.2e <= 0.02 over 9 laws", worst), csv.text() };
}

Outcome c8_rho()
{
  const auto start = std::chrono::steady_clock::now();
  Csv csv;
  double worst = 0.0;
  bool pass = true;
  for (double beta : { 0.0, 0.5 }) {
    const auto p = stable(1.5, beta);
    const PhiProfile profile(from_stable(p));
    for (double t : { 0.5, 1.0, 2.0 }) {
      const auto d = duration_density(profile, t);
      const double err = std::abs(d.value / rho_closed(p, t) - 1.0);
      worst = std::max(worst, err);
      pass = pass && d.converged && err <= 1e-3;
      csv.row({ beta, t, d.value, err });
    }
  }
  const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
  pass = pass && secs <= 300.0;
  return { pass, fmt("max rel err %.2e <= 1e-3, %.1f s <= 300 s", worst, secs), csv.text() };
}

Outcome c9_entrance()
{
  const auto p = stable(1.5, 0.0);
  const auto e = from_stable(p);
  const PhiProfile profile(e);
  Csv csv;
  double worst = 0.0;
  bool pass = true;
  for (double q : { 1.0, 2.0 }) {
    const auto c = survival_transform_check(e, profile, q);
    const double rhs = std::pow(q, -1.0 / p.alpha) / c_r_oracle;
    const double rel = std::abs(c.lhs - rhs) / rhs;
    worst = std::max(worst, rel);
    pass = pass && c.converged && rel <= 1e-2;
    csv.row({ q, c.lhs, rhs, rel });
  }
  return { pass, fmt("max |LHS - RHS|/RHS = %.2e <= 1e-2", worst), csv.text() };
}

Outcome c10_phi_decay()
{
  Csv csv;
  double least = 1e300;
  for (double beta : { 0.0, 0.5 }) {
    const PhiProfile profile(from_stable(stable(1.5, beta)));
    least = std::min(least, profile.decay_fit());
    csv.row({ beta, profile.decay_fit() });
  }
  const double bound = 1.0 + 1.0 / 1.5 - 0.1;
  return { least >= bound, fmt("min fitted decay %.4f >= %.4f", least, bound), csv.text() };
}

Outcome c11_symmetric()
{
  Csv csv;
  double worst = 0.0;
  for (double alpha : { 1.2, 1.5, 1.8 }) {
    const auto e = from_stable(stable(alpha, 0.0));
    for (double x : { -2.0, 0.3, 1.0 }) {
      const double d = std::abs(h_0(e, x).value - h0_symmetric(e, x).value);
      worst = std::max(worst, d);
      csv.row({ alpha, x, d });
    }
  }
  const auto e = from_stable(stable(1.5, 0.0));
  bool monotone = true;
  double prev = -1.0;
  for (double q : { 10.0, 1.0, 0.1, 0.01 }) {
    const double v = h_q(e, q, 1.0).value;
    monotone = monotone && v >= prev;
    prev = v;
    csv.row({ q, v });
  }
  return { worst <= 1e-10 && monotone,
           fmt("max |h0 - symmetric formula| = %.2e <= 1e-10, h_q(1) nonincreasing in q: ", worst) +
             (monotone ? "yes" : "no"),
           csv.text() };
}

char letter(Verdict v) { return v == Verdict::holds ? 'h' : v == Verdict::fails ? 'f' : 'i'; }

Outcome c12_conditions()
{
  // tau c_theta_ (c_theta_^2 + c_omega_^2)/(c_theta^^2 + c_omega^^2) > max{c_omega^, c_theta^ - c_omega_}
  // with tight constants c_theta = 1, c_omega = beta tau, tau = -tan(pi alpha/2); c_omega <= 0 is
  // has no lower bound (inconclusive). Rows: alpha = 1.1, 1.4, 1.6, 1.7, 1.9.
  const double alphas[] = { 1.1, 1.4, 1.6, 1.7, 1.9 };
  const double betas[] = { -0.5, 0.0, 0.25, 0.6, 0.95 };
  const char* table[5] = { "iihhh", "iihhh", "iifhh", "iifff", "iifff" };
  Csv csv;
  int agree = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const auto p = stable(alphas[i], betas[j]);
      const auto r = check_AL(ALBounds::tight(p), from_stable(p));
      agree += letter(r.verdict) == table[i][j];
      csv.line(fmt("%g,%g,", alphas[i], betas[j]) + to_string(r.verdict));
    }

  struct Case
  {
    const char* name;
    LevyExponent exp;
    LevyTriplet triplet;
    const char* expected; // L1p L2 L3 THETA_I THETA_II THETA_III
  };
  LevyTriplet bm;
  bm.v = 1.0;
  const std::vector<Case> cases = {
    { "stable 1.5", from_stable(stable(1.5, 0.5)), stable_triplet(1.5, 0.75, 0.25), "hhhhhh" },
    { "brownian", brownian(1.0), bm, "hhfhhh" },
    { "bounded theta", synthetic::bounded_theta(), synthetic::bounded_theta_triplet(), "ffffff" },
  };
  int matched = 0;
  for (const auto& c : cases) {
    const auto t = check_theta_lemma(c.exp);
    const std::string got{ letter(check_L1prime(c.exp).verdict), letter(check_L2(c.triplet).verdict),
                           letter(check_L3(c.exp).verdict), letter(t.i.verdict),
                           letter(t.ii.verdict), letter(t.iii.verdict) };
    matched += got == c.expected;
    csv.line(std::string(c.name) + "," + got);
  }
  return { agree == 25 && matched == 3,
           fmt("AL grid %g/25 cells agree, L1'/L2/L3/theta verdicts %g/3 processes agree", agree, matched),
           csv.text() };
}

} // namespace

int main()
{
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
    { "stable h0 golden", c1_golden },
    { "skewness ratio", c2_skewness },
    { "spectrally one-sided", c3_one_sided },
    { "harmonicity residual", c4_harmonicity },
    { "finite-p identity", c5_hp },
    { "resolvent scaling", c6_resolvent },
    { "theta lemma (iii) decay", c7_theta_iii },
    { "duration density", c8_rho },
    { "entrance-law identity", c9_entrance },
    { "phi decay", c10_phi_decay },
    { "symmetric collapse", c11_symmetric },
    { "condition matrix", c12_conditions },
  };
  int failures = 0;
  std::vector<std::string> first;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto o = criteria[i].second();
    first.push_back(o.csv);
    failures += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.summary.c_str());
  }
  std::size_t identical = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
    identical += criteria[i].second().csv == first[i];
  const bool det = identical == criteria.size();
  failures += !det;
  std::printf("[%s] 13 determinism: %zu/%zu criterion CSVs byte-identical on a second run\n",
              det ? "PASS" : "FAIL", identical, criteria.size());
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
