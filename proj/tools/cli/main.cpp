#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace cartan::cli;

  CLI::App app{"Indefinite-metric measurement algebra toolkit"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"json", Format::Json},
                                              {"text", Format::Text}};

  CheckOptions check;
  Format check_fmt = Format::Text;
  auto* check_cmd = app.add_subcommand("check", "run the seeded property suites");
  check_cmd->add_option("--seed", check.seed, "base seed")->capture_default_str();
  check_cmd->add_option("--trials", check.trials, "random instances per suite")
      ->capture_default_str();
  check_cmd->add_option("--tol", check.tol, "residual tolerance")
      ->capture_default_str();
  check_cmd->add_option("--format", check_fmt, "json or text")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  std::string scenario;
  Format run_fmt = Format::Json;
  std::optional<double> run_tol;
  auto* run_cmd = app.add_subcommand("run", "execute a scenario file");
  run_cmd->add_option("--scenario", scenario, "scenario JSON file")->required();
  run_cmd->add_option("--format", run_fmt, "json or text")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  run_cmd->add_option("--tol", run_tol, "override the scenario tolerance");

  std::string input;
  double decompose_tol = cartan::kDefaultTol;
  Format decompose_fmt = Format::Json;
  auto* dec_cmd = app.add_subcommand("decompose", "Cartan decomposition of a 4x4 matrix");
  dec_cmd->add_option("--input", input, "JSON file holding the matrix")->required();
  dec_cmd->add_option("--tol", decompose_tol, "membership tolerance")
      ->capture_default_str();
  dec_cmd->add_option("--format", decompose_fmt, "json or text")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  if (*check_cmd) return cmd_check(check, check_fmt, std::cout, std::cerr);
  if (*run_cmd) return cmd_run(scenario, run_fmt, run_tol, std::cout, std::cerr);
  return cmd_decompose(input, decompose_tol, decompose_fmt, std::cout, std::cerr);
}
