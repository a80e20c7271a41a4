#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace gqml::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitValidation = 2,
  kExitBudget = 3,
  kExitAmbiguous = 4,
};

struct RunConfig {
  std::string command;
  std::filesystem::path spec_path;
  std::filesystem::path element_path;
  std::filesystem::path state_a_path;
  std::filesystem::path state_b_path;
  std::filesystem::path output_path;
  std::optional<int> k;
  std::optional<double> p;
  std::optional<double> n;
  std::optional<double> tol;
  std::optional<int> budget;
  std::optional<std::int64_t> samples;
  std::optional<int> pairs;
  std::optional<std::uint64_t> seed;     // 42 when unset
  std::optional<std::string> format;     // json when unset
  std::optional<int> threads;            // 1 when unset
  bool no_cache = false;
};

/// Rejects unknown commands, out-of-range values and flags the command does
/// not use. Throws gqml::Error{InvalidArgument}.
void validate_config(const RunConfig& config);

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;       // the report
  std::string diagnostics;  // human-readable, for stderr
};

/// Validates the configuration, runs the command and maps every failure onto
/// the exit-code contract. Never throws.
CommandResult run(const RunConfig& config);

}  // namespace gqml::app
