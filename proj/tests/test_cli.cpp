#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "runner.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace levy::cli;
namespace fs = std::filesystem;

namespace {

const char* h0_config = R"(task = h0
[process]
kind = stable
alpha = 1.5
c_theta = 1
beta = 0.5
[grid]
x = -2, -1, 1, 2
)";

fs::path scratch(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / "levy_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text)
{
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_binary(const std::string& args)
{
  const std::string cmd = std::string(LEVY_CLI_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double cell(const Table& t, std::size_t row, const std::string& column)
{
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == column)
      return std::get<double>(t.rows[row][i]);
  FAIL("no column " << column);
  return 0.0;
}

} // namespace

TEST_CASE("config parsing")
{
  const auto c = parse_config(h0_config);
  CHECK(c.task == Task::h0);
  CHECK(c.process.kind == ProcessKind::stable);
  CHECK(c.process.stable.beta() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.xs == std::vector<double>{ -2.0, -1.0, 1.0, 2.0 });
  CHECK(c.format == "csv");

  const auto g = parse_config("[grid]\nq = logspace(0, -2, 3)\nt = linspace(1, 2, 3)\n");
  REQUIRE(g.qs.size() == 3);
  CHECK(g.qs[2] == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(g.ts == std::vector<double>{ 1.0, 1.5, 2.0 });

  const auto t = parse_config("[process]\nkind = triplet\nv = 0\npositive = power 0.5 1.5\n"
                              "negative = exponential 1 2\n");
  CHECK(t.process.triplet.positive.at_zero == 2.5);

  for (const char* bad : { "[process\n", "task = nope\n", "[process]\nkind = cauchy\n",
                           "[process]\nalpha = 2.5\n", "[grid]\nx = 1, two\n",
                           "[grid]\ny = 1\n", "[output]\nformat = xml\n", "extra = 1\n",
                           "[quadrature]\nrel_tol = -1\n", "[process]\nkind = brownian\nv = 0\n" })
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("grid validation happens before any computation")
{
  auto c = parse_config("task = h0\n");
  CHECK_THROWS_AS(compute(c), ConfigError);
  c = parse_config("task = stable-constants\n[process]\nkind = brownian\n");
  CHECK_THROWS_AS(compute(c), ConfigError);
  c = parse_config("task = rho\n[grid]\nt = 0, 1\n");
  CHECK_THROWS_AS(compute(c), ConfigError);
}

TEST_CASE("h0 table against the closed form")
{
  const auto t = compute(parse_config(h0_config));
  REQUIRE(t.rows.size() == 4);
  CHECK_FALSE(t.non_converged);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(cell(t, i, "rel_err") <= 1e-6);
  CHECK(exit_code(t) == 0);
}

TEST_CASE("stable constants as JSON")
{
  const auto c = parse_config("task = stable-constants\n[process]\nalpha = 1.5\nbeta = 0\n"
                              "[output]\nformat = json\n");
  const auto t = compute(c);
  CHECK(cell(t, 0, "c_r") == doctest::Approx(0.769800358919501).epsilon(1e-9));
  const auto text = render(c, t);
  CHECK(text.find("\"c_r\"") != std::string::npos);
}

TEST_CASE("CSV header and fixed formatting")
{
  const auto c = parse_config(h0_config);
  const auto text = render(c, compute(c));
  CHECK(text.rfind("# levy-harmonic v" LEVY_HARMONIC_VERSION ", task=h0, process=stable", 0) == 0);
  CHECK(text.find("\n-2.0000000000000000e+00,") != std::string::npos);
}

TEST_CASE("closed forms for Brownian tasks")
{
  const auto r = compute(parse_config("task = resolvent\n[process]\nkind = brownian\nv = 1\n"
                                      "[grid]\nq = 1\nx = 0, 1.5\n"));
  CHECK(cell(r, 0, "value") == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(cell(r, 1, "rel_err") <= 1e-8);
  const auto d = compute(parse_config("task = density\n[process]\nkind = brownian\n"
                                      "[grid]\nt = 1\nx = 0.5\n"));
  CHECK(cell(d, 0, "rel_err") <= 1e-8);
}

TEST_CASE("check-conditions exit codes")
{
  const auto s = compute(parse_config("task = check-conditions\n[process]\nalpha = 1.5\nbeta = 0.5\n"));
  CHECK_FALSE(s.condition_failed);
  CHECK(exit_code(s) == 0);
  const auto b = compute(parse_config("task = check-conditions\n[process]\nkind = brownian\n"));
  CHECK(b.condition_failed);
  CHECK(exit_code(b) == 1);
  const auto l = compute(parse_config("task = check-conditions\n[process]\nkind = brownian\n"
                                      "[conditions]\nlist = L1p, L2\n"));
  CHECK(exit_code(l) == 0);
  CHECK_THROWS_AS(compute(parse_config("task = check-conditions\n[process]\nkind = brownian\n"
                                       "[conditions]\nlist = AL\n")),
                  ConfigError);
}

TEST_CASE("binary: deterministic output and exit codes")
{
  const auto cfg = write("h0.ini", h0_config);
  const auto a = scratch("a.csv");
  const auto b = scratch("b.csv");
  fs::remove(a);
  fs::remove(b);
  CHECK(run_binary("--config " + cfg.string() + " --out " + a.string()) == 0);
  CHECK(run_binary("--config " + cfg.string() + " --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const auto bad = write("bad.ini", "task = h0\n[process\nkind = stable\n");
  const auto none = scratch("none.csv");
  fs::remove(none);
  CHECK(run_binary("--config " + bad.string() + " --out " + none.string()) == 2);
  CHECK_FALSE(fs::exists(none));
  CHECK(run_binary("--config " + scratch("missing.ini").string() + " --out " + none.string()) == 2);
  CHECK_FALSE(fs::exists(none));
  CHECK(run_binary("--bogus") == 2);

  const auto starved = write("starved.ini", std::string(h0_config) + "[quadrature]\nmax_subdivisions = 3\n");
  const auto partial = scratch("partial.csv");
  CHECK(run_binary("--config " + starved.string() + " --out " + partial.string()) == 3);
  CHECK(slurp(partial).find(",0\n") != std::string::npos);

  CHECK(run_binary("--config " + cfg.string() + " --task check-conditions --out " +
                   scratch("c.csv").string()) == 0);
}
