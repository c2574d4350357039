#pragma once

#include "sda/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sda {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kExitYes = 0, kExitNo = 1, kExitUnknown = 2, kExitUsage = 64 };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> graphs;
  double tol = kDefaultTol;
  std::optional<std::string> out;
  bool symbolic = false;
  bool materialize = false;
  bool include_matrices = false;
  long n = 3, nprime = 3;
  long p = 2;
  long p_max = 8, n_max = 8;
  std::size_t max_iter = 100000;
};

struct CommandResult {
  Json report;
  int exit_code = kExitYes;
};

CommandResult cmd_orbitals(const std::string& graph, const RunConfig& config);
CommandResult cmd_scheme_check(const std::string& graph, const RunConfig& config);
CommandResult cmd_chartable(const std::string& spec, const RunConfig& config);
CommandResult cmd_sdp(const std::string& x, const std::string& a, const RunConfig& config);
CommandResult cmd_aip(const std::string& x, const std::string& a, const RunConfig& config);
CommandResult cmd_sda(const std::string& x, const std::string& a, const RunConfig& config);
CommandResult cmd_hom(const std::string& x, const std::string& a, const RunConfig& config);
CommandResult cmd_fool(long n, long nprime, bool materialize, const RunConfig& config);
CommandResult cmd_clique_grid(long p_max, long n_max, const RunConfig& config);
CommandResult cmd_slater(long p, long n, const RunConfig& config);

CommandResult dispatch(const RunConfig& config);

// Parses argv, runs the command, writes JSON, returns the exit code.
int run_cli(int argc, char** argv);

}  // namespace sda
