#pragma once

#include "levy/exponent.hpp"
#include "levy/harmonic.hpp"
#include "levy/quadrature.hpp"
#include "levy/stable.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace levy::cli {

//! Malformed or invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Task
{
  exponent_eval,
  density,
  resolvent,
  h0,
  verify_harmonic,
  rho,
  stable_constants,
  check_conditions
};

Task parse_task(const std::string& name);
std::string to_string(Task task);

enum class ProcessKind
{
  stable,
  brownian,
  triplet
};

struct ProcessSpec
{
  ProcessKind kind = ProcessKind::stable;
  StableParams stable;
  double v = 1.0;
  LevyTriplet triplet;
  //! Human-readable description written to the output header.
  std::string label;
};

struct RunConfig
{
  Task task = Task::h0;
  ProcessSpec process;
  std::vector<double> xs;
  std::vector<double> ts;
  std::vector<double> qs;
  std::vector<double> lambdas;
  QuadratureSpec quadrature;
  std::string format = "csv";
  std::string path;
  //! check-conditions: subset of L1p, L2, L3, THETA, AL, LA_RHO.
  std::vector<std::string> conditions;
  std::optional<ALBounds> bounds;
};

//! Parses an INI file. A top-level key `task` and the sections [process],
//! [grid], [quadrature], [output], [conditions] and [bounds] are read.
//! Grid entries are comma-separated lists or linspace(a, b, n) or
//! logspace(a, b, n) with base-10 exponents. Throws ConfigError.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

using Cell = std::variant<double, std::string>;

struct Table
{
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  //! Some row did not converge.
  bool non_converged = false;
  //! check-conditions: some requested condition does not hold.
  bool condition_failed = false;
};

//! Computes the table of the configured task, rows in grid order.
//! Throws ConfigError for inputs the task cannot use.
Table compute(const RunConfig& config);

//! CSV with the `# levy-harmonic v<semver>, task=..., process=...` header,
//! or JSON mirroring it. Numbers as %.16e.
std::string render(const RunConfig& config, const Table& table);

//! 0 ok, 1 condition failure, 2 config error, 3 non-convergence.
int exit_code(const Table& table);

//! Loads, computes and writes; the output file is created only after the
//! table is complete. Messages go to err.
int run(const std::string& config_path, const std::optional<std::string>& task,
        const std::optional<std::string>& out, std::string* err = nullptr);

LevyExponent make_exponent(const ProcessSpec& process, const QuadratureSpec& spec);

} // namespace levy::cli
