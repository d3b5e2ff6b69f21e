#include "runner.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  CLI::App app{ "Potential theory of one-dimensional Levy processes" };
  app.set_version_flag("--version", std::string("levy-harmonic v") + LEVY_HARMONIC_VERSION);
  std::string config;
  std::string task;
  std::string out;
  app.add_option("--config", config, "INI run configuration")->required();
  app.add_option("--task", task, "Override the configured task");
  app.add_option("--out", out, "Override the output path ('-' for stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::string err;
  const int code =
    levy::cli::run(config, task.empty() ? std::nullopt : std::optional<std::string>(task),
                   out.empty() ? std::nullopt : std::optional<std::string>(out), &err);
  if (!err.empty())
    std::cerr << "levy-harmonic: " << err << "\n";
  return code;
}
