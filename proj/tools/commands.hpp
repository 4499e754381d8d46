#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "ewopt/json_io.hpp"

namespace ewopt::cli {

/// Exit codes: 0 all checks passed, 1 mathematical finding, 2 usage error, 3 internal failure.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
  std::string command;
  double t = 1.0;
  std::string pi;  // empty: the cycle 2,3,...,n,1
  std::optional<double> c;
  std::size_t samples = 0;  // 0: command default
  std::size_t trials = 0;   // 0: command default
  std::uint64_t seed = 42;
  std::size_t n = 3;
  std::string output = "-";
  int restarts = 100;
  int iters = 200;
  std::string subtraction_file;
  std::string rho_file;
  std::string state = "min-eigenvector";
  std::string grid;  // conjecture-probe t values, comma separated
  bool serial = false;
  std::optional<double> min_scale;  // probe floor on ||C||_F
  bool all_permutations = false;  // conjecture-probe: every pi, not one per cycle type
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = kExitPass;
};

/// Dispatches on config.command. Throws ewopt::Error subclasses for invalid input.
CommandResult run(const RunConfig& config);

}  // namespace ewopt::cli
