#include <fstream>
#include <iostream>

#ifdef GQML_CLI11_SINGLE_HEADER
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "gqml_app/cli.hpp"

int main(int argc, char** argv) {
  using gqml::app::RunConfig;
  RunConfig config;
  CLI::App cli{"Finite transformation groupoids: norms, Lipschitz seminorms and state distances"};
  cli.add_option("command", config.command, "validate | norms | distance | rd-report | diameter | verify")
      ->required();
  cli.add_option("--spec", config.spec_path, "groupoid spec (JSON)")->required();
  cli.add_option("--element", config.element_path, "algebra element (JSON)");
  cli.add_option("--state-a", config.state_a_path, "first state (JSON)");
  cli.add_option("--state-b", config.state_b_path, "second state (JSON)");
  cli.add_option("-k", config.k, "commutator order");
  cli.add_option("-p", config.p, "Sobolev exponent");
  cli.add_option("-n", config.n, "ball radius");
  cli.add_option("--tol", config.tol, "stopping gap");
  cli.add_option("--budget", config.budget, "cut budget");
  cli.add_option("--samples", config.samples, "random samples for rd-report and diameter");
  cli.add_option("--pairs", config.pairs, "state pairs sampled by diameter");
  cli.add_option("--seed", config.seed, "RNG seed (default 42)");
  cli.add_option("--out", config.output_path, "write the report here instead of stdout");
  cli.add_option("--format", config.format, "json | csv");
  cli.add_option("--threads", config.threads, "worker threads");
  cli.add_flag("--no-cache", config.no_cache, "skip the on-disk fibre table cache");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : gqml::app::kExitValidation;
  }

  const auto result = gqml::app::run(config);
  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << '\n';
  if (config.output_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << config.output_path << '\n';
      return gqml::app::kExitInternal;
    }
    out << result.output;
  }
  return result.exit_code;
}
