#include "runner.hpp"

#include "levy/conditions.hpp"
#include "levy/duration.hpp"
#include "levy/errors.hpp"
#include "levy/parallel.hpp"
#include "levy/resolvent.hpp"
#include "levy/special.hpp"

#include "json.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace levy::cli {

namespace {

using boost::property_tree::ptree;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

const std::pair<const char*, Task> task_names[] = {
  { "exponent-eval", Task::exponent_eval },
  { "density", Task::density },
  { "resolvent", Task::resolvent },
  { "h0", Task::h0 },
  { "verify-harmonic", Task::verify_harmonic },
  { "rho", Task::rho },
  { "stable-constants", Task::stable_constants },
  { "check-conditions", Task::check_conditions },
};

double number(const std::string& text, const std::string& what)
{
  const std::string s = boost::trim_copy(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v))
    throw ConfigError(what + ": not a finite number: '" + s + "'");
  return v;
}

double get_number(const ptree& t, const std::string& key, double fallback)
{
  const auto v = t.get_optional<std::string>(key);
  return v ? number(*v, key) : fallback;
}

std::string format_number(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string short_number(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& text, const std::string& key)
{
  const std::string s = boost::trim_copy(text);
  for (const char* fn : { "linspace", "logspace" }) {
    if (!boost::starts_with(s, fn))
      continue;
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
      throw ConfigError(key + ": expected " + fn + "(a, b, n)");
    std::vector<std::string> args;
    const std::string inner = s.substr(open + 1, s.size() - open - 2);
    boost::split(args, inner, boost::is_any_of(","));
    if (args.size() != 3)
      throw ConfigError(key + ": expected " + fn + "(a, b, n)");
    const double a = number(args[0], key);
    const double b = number(args[1], key);
    const double n = number(args[2], key);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6)
      throw ConfigError(key + ": point count must be a positive integer");
    const int count = static_cast<int>(n);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
      const double u = count == 1 ? a : a + (b - a) * i / (count - 1);
      out.push_back(std::string(fn) == "logspace" ? std::pow(10.0, u) : u);
    }
    return out;
  }
  std::vector<std::string> parts;
  boost::split(parts, s, boost::is_any_of(","));
  std::vector<double> out;
  for (const auto& p : parts)
    out.push_back(number(p, key));
  return out;
}

LevyDensity parse_density(const std::string& text, const std::string& key)
{
  std::vector<std::string> w;
  const std::string s = boost::trim_copy(text);
  boost::split(w, s, boost::is_any_of(" \t"), boost::token_compress_on);
  if (w.size() == 1 && w[0] == "none")
    return {};
  if (w.size() != 3)
    throw ConfigError(key + ": expected 'power c alpha', 'exponential c rate' or 'none'");
  const double c = number(w[1], key);
  const double p = number(w[2], key);
  if (w[0] == "power")
    return power_law_density(c, p);
  if (w[0] == "exponential")
    return exponential_density(c, p);
  throw ConfigError(key + ": unknown density kind '" + w[0] + "'");
}

ProcessSpec parse_process(const ptree& t)
{
  ProcessSpec p;
  const std::string kind = t.get<std::string>("kind", "stable");
  if (kind == "stable") {
    p.kind = ProcessKind::stable;
    const double alpha = get_number(t, "alpha", 1.5);
    if (t.count("c_plus") || t.count("c_minus")) {
      p.stable.alpha = alpha;
      p.stable.c_plus = get_number(t, "c_plus", 0.5);
      p.stable.c_minus = get_number(t, "c_minus", 0.5);
    } else {
      p.stable = StableParams::from_skewness(alpha, get_number(t, "c_theta", 1.0),
                                             get_number(t, "beta", 0.0));
    }
    p.stable.validate();
    p.label = "stable alpha=" + short_number(p.stable.alpha) + " beta=" +
              short_number(p.stable.beta()) + " c_theta=" + short_number(p.stable.c_theta());
  } else if (kind == "brownian") {
    p.kind = ProcessKind::brownian;
    p.v = get_number(t, "v", 1.0);
    if (!(p.v > 0.0))
      throw ConfigError("process.v must be positive");
    p.label = "brownian v=" + short_number(p.v);
  } else if (kind == "triplet") {
    p.kind = ProcessKind::triplet;
    p.triplet.b = get_number(t, "b", 0.0);
    p.triplet.v = get_number(t, "v", 0.0);
    p.triplet.positive = parse_density(t.get<std::string>("positive", "none"), "process.positive");
    p.triplet.negative = parse_density(t.get<std::string>("negative", "none"), "process.negative");
    p.triplet.validate();
    p.label = "triplet b=" + short_number(p.triplet.b) + " v=" + short_number(p.triplet.v) +
              " positive=" + boost::trim_copy(t.get<std::string>("positive", "none")) +
              " negative=" + boost::trim_copy(t.get<std::string>("negative", "none"));
  } else {
    throw ConfigError("process.kind must be stable, brownian or triplet");
  }
  return p;
}

ALBounds parse_bounds(const ptree& t)
{
  ALBounds b;
  b.alpha = get_number(t, "alpha", 1.5);
  b.under_c_theta = get_number(t, "under_c_theta", 0.0);
  b.over_c_theta = get_number(t, "over_c_theta", 0.0);
  b.under_c_omega = get_number(t, "under_c_omega", 0.0);
  b.over_c_omega = get_number(t, "over_c_omega", 0.0);
  b.validate();
  return b;
}

void require_grid(const std::vector<double>& g, const char* name, Task task)
{
  if (g.empty())
    throw ConfigError("task " + to_string(task) + " needs a nonempty grid." + name);
}

void validate(const RunConfig& c)
{
  switch (c.task) {
    case Task::exponent_eval: require_grid(c.lambdas, "lambda", c.task); break;
    case Task::density:
      require_grid(c.ts, "t", c.task);
      require_grid(c.xs, "x", c.task);
      break;
    case Task::resolvent:
    case Task::verify_harmonic:
      require_grid(c.qs, "q", c.task);
      require_grid(c.xs, "x", c.task);
      break;
    case Task::h0: require_grid(c.xs, "x", c.task); break;
    case Task::rho: require_grid(c.ts, "t", c.task); break;
    case Task::stable_constants:
      if (c.process.kind != ProcessKind::stable)
        throw ConfigError("stable-constants needs process.kind = stable");
      break;
    case Task::check_conditions: break;
  }
  for (double t : c.ts)
    if (!(t > 0.0))
      throw ConfigError("grid.t values must be positive");
  for (double q : c.qs)
    if (!(q > 0.0))
      throw ConfigError("grid.q values must be positive");
  for (double l : c.lambdas)
    if (!(l >= 0.0))
      throw ConfigError("grid.lambda values must be nonnegative");
}

double rel_err(double value, double closed)
{
  return closed != 0.0 ? std::abs(value - closed) / std::abs(closed) : std::abs(value - closed);
}

// closed form and relative error cells, empty when no closed form exists
void closed_cells(std::vector<Cell>& row, double value, std::optional<double> closed)
{
  if (closed) {
    row.emplace_back(*closed);
    row.emplace_back(rel_err(value, *closed));
  } else {
    row.emplace_back(std::string());
    row.emplace_back(std::string());
  }
}

Cell flag(bool b) { return std::string(b ? "1" : "0"); }

struct Row
{
  std::vector<Cell> cells;
  bool converged = true;
};

// rows computed in parallel, stored by index
template <class F>
Table fill(std::vector<std::string> columns, std::size_t n, F&& f)
{
  std::vector<Row> rows(n);
  parallel_for(n, [&](std::size_t i) { rows[i] = f(i); });
  Table t;
  t.columns = std::move(columns);
  for (auto& r : rows) {
    t.non_converged = t.non_converged || !r.converged;
    t.rows.push_back(std::move(r.cells));
  }
  return t;
}

// row of NaN values for a point where quadrature failed outright
Row failed_row(std::vector<Cell> inputs, std::size_t width)
{
  Row r;
  r.cells = std::move(inputs);
  while (r.cells.size() + 1 < width)
    r.cells.emplace_back(nan);
  r.cells.push_back(flag(false));
  r.converged = false;
  return r;
}

Table exponent_table(const RunConfig& c, const LevyExponent& e)
{
  const auto& p = c.process;
  return fill({ "lambda", "theta", "omega", "error_estimate", "theta_closed", "omega_closed",
                "rel_err", "converged" },
              c.lambdas.size(), [&](std::size_t i) {
                const double l = c.lambdas[i];
                try {
                  const auto v = e.eval(l);
                  Row r;
                  std::optional<double> ct, co;
                  if (p.kind == ProcessKind::stable) {
                    const double s = std::pow(std::abs(l), p.stable.alpha);
                    ct = p.stable.c_theta() * s;
                    co = p.stable.c_omega() * s;
                  } else if (p.kind == ProcessKind::brownian) {
                    ct = p.v * l * l;
                    co = 0.0;
                  }
                  const double err =
                    p.kind == ProcessKind::triplet ? c.quadrature.rel_tol * std::hypot(v.theta, v.omega)
                                                   : 0.0;
                  r.cells = { l, v.theta, v.omega, err };
                  if (ct) {
                    r.cells.emplace_back(*ct);
                    r.cells.emplace_back(*co);
                    const double scale = std::hypot(*ct, *co);
                    const double diff = std::hypot(v.theta - *ct, v.omega - *co);
                    r.cells.emplace_back(scale > 0.0 ? diff / scale : diff);
                  } else {
                    r.cells.insert(r.cells.end(), 3, std::string());
                  }
                  r.cells.push_back(flag(true));
                  return r;
                } catch (const NumericFailure&) {
                  return failed_row({ l }, 8);
                }
              });
}

template <class Eval>
Table pair_table(const std::string& first, const std::vector<double>& as,
                 const std::vector<double>& xs, Eval&& eval,
                 const std::function<std::optional<double>(double, double)>& closed)
{
  const std::size_t n = as.size() * xs.size();
  return fill({ first, "x", "value", "error_estimate", "closed_form", "rel_err", "converged" }, n,
              [&](std::size_t i) {
                const double a = as[i / xs.size()];
                const double x = xs[i % xs.size()];
                try {
                  const QuadratureResult q = eval(a, x);
                  Row r;
                  r.cells = { a, x, q.value, q.error_estimate };
                  closed_cells(r.cells, q.value, closed(a, x));
                  r.cells.push_back(flag(q.converged));
                  r.converged = q.converged;
                  return r;
                } catch (const NumericFailure&) {
                  return failed_row({ a, x }, 7);
                }
              });
}

Table density_table(const RunConfig& c, const LevyExponent& e)
{
  const auto& p = c.process;
  std::optional<double> c_p;
  if (p.kind == ProcessKind::stable)
    c_p = constants(p.stable, c.quadrature).c_p_closed;
  return pair_table(
    "t", c.ts, c.xs,
    [&](double t, double x) { return transition_density(e, t, x, c.quadrature); },
    [&](double t, double x) -> std::optional<double> {
      if (p.kind == ProcessKind::brownian)
        return std::exp(-x * x / (4.0 * p.v * t)) / std::sqrt(4.0 * pi * p.v * t);
      if (c_p && x == 0.0)
        return *c_p * std::pow(t, -1.0 / p.stable.alpha);
      return std::nullopt;
    });
}

Table resolvent_table(const RunConfig& c, const LevyExponent& e)
{
  const auto& p = c.process;
  std::optional<double> c_r;
  if (p.kind == ProcessKind::stable)
    c_r = constants(p.stable, c.quadrature).c_r_closed;
  return pair_table(
    "q", c.qs, c.xs,
    [&](double q, double x) { return resolvent_density(e, q, x, c.quadrature); },
    [&](double q, double x) -> std::optional<double> {
      if (p.kind == ProcessKind::brownian)
        return std::exp(-std::sqrt(q / p.v) * std::abs(x)) / (2.0 * std::sqrt(q * p.v));
      if (c_r && x == 0.0)
        return *c_r * std::pow(q, 1.0 / p.stable.alpha - 1.0);
      return std::nullopt;
    });
}

std::optional<double> h0_reference(const ProcessSpec& p, double x)
{
  if (p.kind == ProcessKind::stable)
    return h0_closed(p.stable, x);
  if (p.kind == ProcessKind::brownian)
    return std::abs(x) / (2.0 * p.v);
  return std::nullopt;
}

Table h0_table(const RunConfig& c, const LevyExponent& e)
{
  return fill({ "x", "value", "error_estimate", "closed_form", "rel_err", "by_parts", "converged" },
              c.xs.size(), [&](std::size_t i) {
                const double x = c.xs[i];
                try {
                  const auto h = h_0(e, x, c.quadrature);
                  Row r;
                  r.cells = { x, h.value, h.error_estimate };
                  closed_cells(r.cells, h.value, h0_reference(c.process, x));
                  r.cells.push_back(flag(h.by_parts));
                  r.cells.push_back(flag(h.converged));
                  r.converged = h.converged;
                  return r;
                } catch (const NumericFailure&) {
                  return failed_row({ x }, 7);
                }
              });
}

Table harmonic_table(const RunConfig& c, const LevyExponent& e)
{
  const auto& p = c.process;
  RealFunction h;
  double growth = 0.0;
  if (p.kind == ProcessKind::stable) {
    h = stable_h0_function(p.stable, c.quadrature);
    growth = p.stable.alpha - 1.0;
  } else if (p.kind == ProcessKind::brownian) {
    h = [v = p.v](double y) { return std::abs(y) / (2.0 * v); };
    growth = 1.0;
  } else {
    h = [&e, spec = c.quadrature](double y) { return h_0(e, y, spec).value; };
    growth = std::max(0.0, e.growth_exponent() - 1.0);
  }
  const std::size_t n = c.qs.size() * c.xs.size();
  return fill({ "q", "x", "h0", "harmonic_residual", "harmonic_error", "hp_p", "hp_residual",
                "hp_error", "converged" },
              n, [&](std::size_t i) {
                const double q = c.qs[i / c.xs.size()];
                const double x = c.xs[i % c.xs.size()];
                try {
                  const auto hr = harmonicity_residual(e, h, growth, q, x, c.quadrature);
                  const double pp = 0.5 * q;
                  const auto hp = hp_identity_residual(e, q, pp, x, c.quadrature);
                  Row r;
                  r.converged = hr.converged && hp.converged;
                  r.cells = { q, x, h(x), hr.value, hr.error_estimate, pp, hp.value,
                              hp.error_estimate, flag(r.converged) };
                  return r;
                } catch (const NumericFailure&) {
                  return failed_row({ q, x }, 9);
                }
              });
}

Table rho_table(const RunConfig& c, const LevyExponent& e)
{
  const auto& p = c.process;
  const PhiProfile profile(e, c.quadrature);
  return fill({ "t", "value", "error_estimate", "closed_form", "rel_err", "negative", "converged" },
              c.ts.size(), [&](std::size_t i) {
                const double t = c.ts[i];
                const auto d = duration_density(profile, t, c.quadrature);
                std::optional<double> closed;
                if (p.kind == ProcessKind::stable)
                  closed = rho_closed(p.stable, t);
                else if (p.kind == ProcessKind::brownian)
                  closed = std::sqrt(p.v / pi) * std::pow(t, -1.5);
                Row r;
                r.cells = { t, d.value, d.error_estimate };
                closed_cells(r.cells, d.value, closed);
                r.cells.push_back(flag(d.negative));
                r.cells.push_back(flag(d.converged));
                r.converged = d.converged;
                return r;
              });
}

Table constants_table(const RunConfig& c)
{
  const auto k = constants(c.process.stable, c.quadrature);
  Table t;
  t.columns = { "alpha", "beta", "c_theta", "c_omega", "s_alpha", "c_port", "c_int", "c_int_plus",
                "tan_factor", "c_p", "c_p_closed", "c_r", "c_r_closed", "c_one_sided" };
  t.rows.push_back({ k.alpha, k.beta, k.c_theta, k.c_omega, k.s_alpha, k.c_port, k.c_int,
                     k.c_int_plus, k.tan_factor, k.c_p, k.c_p_closed, k.c_r, k.c_r_closed,
                     k.c_one_sided });
  return t;
}

LevyTriplet triplet_of(const ProcessSpec& p)
{
  if (p.kind == ProcessKind::triplet)
    return p.triplet;
  if (p.kind == ProcessKind::stable)
    return stable_triplet(p.stable.alpha, p.stable.c_plus, p.stable.c_minus);
  LevyTriplet t;
  t.v = p.v;
  return t;
}

Table conditions_table(const RunConfig& c, const LevyExponent& e)
{
  std::optional<ALBounds> bounds = c.bounds;
  if (!bounds && c.process.kind == ProcessKind::stable)
    bounds = ALBounds::tight(c.process.stable);
  std::vector<std::string> wanted = c.conditions;
  if (wanted.empty()) {
    wanted = { "L1p", "L2", "L3", "THETA" };
    if (bounds) {
      wanted.push_back("AL");
      wanted.push_back("LA_RHO");
    }
  }
  for (const auto& w : wanted) {
    if (w != "L1p" && w != "L2" && w != "L3" && w != "THETA" && w != "AL" && w != "LA_RHO")
      throw ConfigError("unknown condition '" + w + "'");
    if ((w == "AL" || w == "LA_RHO") && !bounds)
      throw ConfigError("condition " + w + " needs a [bounds] section");
  }

  std::vector<std::vector<ConditionReport>> reports(wanted.size());
  parallel_for(wanted.size(), [&](std::size_t i) {
    const auto& w = wanted[i];
    if (w == "L1p")
      reports[i] = { check_L1prime(e, 1.0, c.quadrature) };
    else if (w == "L2")
      reports[i] = { check_L2(triplet_of(c.process)) };
    else if (w == "L3")
      reports[i] = { check_L3(e, c.quadrature) };
    else if (w == "THETA") {
      const auto t = check_theta_lemma(e, c.quadrature);
      reports[i] = { t.i, t.ii, t.iii };
    } else if (w == "AL")
      reports[i] = { check_AL(*bounds, e, c.quadrature) };
    else
      reports[i] = { check_LA_rho_bounds(*bounds, e) };
  });

  Table t;
  t.columns = { "condition_id", "verdict", "quantity", "value", "threshold", "within", "notes" };
  for (const auto& group : reports)
    for (const auto& r : group) {
      t.condition_failed = t.condition_failed || !r.holds();
      const std::string id = to_string(r.condition_id);
      const std::string verdict = to_string(r.verdict);
      if (r.evidence.empty())
        t.rows.push_back({ id, verdict, std::string(), nan, nan, std::string(), r.notes });
      for (const auto& ev : r.evidence)
        t.rows.push_back({ id, verdict, ev.quantity, ev.value, ev.threshold, flag(ev.within), r.notes });
    }
  return t;
}

std::string csv_field(const Cell& c)
{
  if (const double* d = std::get_if<double>(&c))
    return format_number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  return "\"" + boost::replace_all_copy(s, "\"", "\"\"") + "\"";
}

std::string header(const RunConfig& c)
{
  return std::string("levy-harmonic v") + LEVY_HARMONIC_VERSION + ", task=" + to_string(c.task) +
         ", process=" + c.process.label;
}

} // namespace

Task parse_task(const std::string& name)
{
  for (const auto& [n, t] : task_names)
    if (name == n)
      return t;
  throw ConfigError("unknown task '" + name + "'");
}

std::string to_string(Task task)
{
  for (const auto& [n, t] : task_names)
    if (t == task)
      return n;
  return "unknown";
}

RunConfig parse_config(const std::string& text)
{
  ptree root;
  try {
    std::istringstream in(text);
    boost::property_tree::ini_parser::read_ini(in, root);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.message() + " at line " +
                      std::to_string(e.line()));
  }
  static const char* known[] = { "task", "process", "grid", "quadrature", "output", "conditions",
                                 "bounds" };
  for (const auto& [key, _] : root) {
    bool ok = false;
    for (const char* k : known)
      ok = ok || key == k;
    if (!ok)
      throw ConfigError("unknown config entry '" + key + "'");
  }

  RunConfig c;
  try {
    if (const auto task = root.get_optional<std::string>("task"))
      c.task = parse_task(boost::trim_copy(*task));
    c.process = parse_process(root.get_child("process", ptree()));

    const ptree grid = root.get_child("grid", ptree());
    for (const auto& [key, value] : grid) {
      auto g = parse_grid(value.data(), "grid." + key);
      if (key == "x")
        c.xs = std::move(g);
      else if (key == "t")
        c.ts = std::move(g);
      else if (key == "q")
        c.qs = std::move(g);
      else if (key == "lambda")
        c.lambdas = std::move(g);
      else
        throw ConfigError("unknown grid entry '" + key + "'");
    }

    const ptree quad = root.get_child("quadrature", ptree());
    c.quadrature.rel_tol = get_number(quad, "rel_tol", c.quadrature.rel_tol);
    c.quadrature.abs_tol = get_number(quad, "abs_tol", c.quadrature.abs_tol);
    const double subdivisions = get_number(quad, "max_subdivisions", c.quadrature.max_subdivisions);
    if (subdivisions != std::floor(subdivisions) || subdivisions < 1.0 || subdivisions > 1e8)
      throw ConfigError("quadrature.max_subdivisions must be a positive integer");
    c.quadrature.max_subdivisions = static_cast<int>(subdivisions);
    c.quadrature.validate();

    const ptree out = root.get_child("output", ptree());
    c.format = boost::trim_copy(out.get<std::string>("format", "csv"));
    if (c.format != "csv" && c.format != "json")
      throw ConfigError("output.format must be csv or json");
    c.path = boost::trim_copy(out.get<std::string>("path", ""));

    if (const auto list = root.get_optional<std::string>("conditions.list")) {
      std::vector<std::string> names;
      boost::split(names, *list, boost::is_any_of(","));
      for (auto& n : names)
        c.conditions.push_back(boost::trim_copy(n));
    }
    if (const auto b = root.get_child_optional("bounds"))
      c.bounds = parse_bounds(*b);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const boost::property_tree::ptree_error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

LevyExponent make_exponent(const ProcessSpec& process, const QuadratureSpec& spec)
{
  switch (process.kind) {
    case ProcessKind::stable: return from_stable(process.stable);
    case ProcessKind::brownian: return brownian(process.v);
    case ProcessKind::triplet: return from_triplet(process.triplet, spec);
  }
  throw ConfigError("unknown process kind");
}

Table compute(const RunConfig& config)
{
  validate(config);
  try {
    const auto e = make_exponent(config.process, config.quadrature);
    switch (config.task) {
      case Task::exponent_eval: return exponent_table(config, e);
      case Task::density: return density_table(config, e);
      case Task::resolvent: return resolvent_table(config, e);
      case Task::h0: return h0_table(config, e);
      case Task::verify_harmonic: return harmonic_table(config, e);
      case Task::rho: return rho_table(config, e);
      case Task::stable_constants: return constants_table(config);
      case Task::check_conditions: return conditions_table(config, e);
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown task");
}

std::string render(const RunConfig& config, const Table& table)
{
  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["generator"] = header(config);
    j["task"] = to_string(config.task);
    j["process"] = config.process.label;
    j["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json o;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (const double* d = std::get_if<double>(&r[i]))
          o[table.columns[i]] = *d;
        else
          o[table.columns[i]] = std::get<std::string>(r[i]);
      }
      rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# " << header(config) << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out << (i ? "," : "") << csv_field(r[i]);
    out << "\n";
  }
  return out.str();
}

int exit_code(const Table& table)
{
  if (table.non_converged)
    return 3;
  if (table.condition_failed)
    return 1;
  return 0;
}

int run(const std::string& config_path, const std::optional<std::string>& task,
        const std::optional<std::string>& out, std::string* err)
{
  auto report = [&](const std::string& msg) {
    if (err)
      *err = msg;
  };
  try {
    RunConfig c = load_config(config_path);
    if (task)
      c.task = parse_task(*task);
    if (out)
      c.path = *out;
    const Table table = compute(c);
    const std::string text = render(c, table);
    if (c.path.empty() || c.path == "-") {
      std::cout << text;
    } else {
      std::ofstream f(c.path, std::ios::binary);
      if (!f)
        throw ConfigError("cannot write output '" + c.path + "'");
      f << text;
    }
    const int code = exit_code(table);
    if (code == 3)
      report("some grid points did not converge; flagged in the converged column");
    else if (code == 1)
      report("some conditions do not hold");
    return code;
  } catch (const ConfigError& e) {
    report(e.what());
    return 2;
  } catch (const NumericFailure& e) {
    report(e.what());
    return 3;
  }
}

} // namespace levy::cli
