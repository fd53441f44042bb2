#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwm/common.hpp"

namespace gwm {

/// Parsed command-line configuration; round-trips through to_flags().
struct RunConfig {
  std::string subcommand;
  std::string law;                 // single-law subcommands
  std::vector<std::string> laws;   // compare
  std::string tolls;               // toll spec list, comma separated
  std::vector<std::string> alphas; // compare
  std::size_t trunc = 4096;
  std::vector<std::size_t> n_list;
  std::size_t n = 0;
  std::size_t n_max = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool json = false;
  bool mu_prime = false;
  int cm_order = -1;
  std::string suite = "quick";
  std::string output;  // empty: stdout

  std::vector<std::string> to_flags() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parse argv (excluding the program name) into a RunConfig.
/// Throws validation_error on bad flags.
RunConfig parse_args(const std::vector<std::string>& args);

/// Execute a parsed configuration; returns the process exit code
/// (0 success, 1 computation error, 2 usage error).
int run_config(const RunConfig& cfg);

/// Full entry point: parse + dispatch + error rendering.
int run_cli(int argc, const char* const* argv);

/// Parse "RE[+IMi]" into a complex number (e.g. "-1", "0.3", "0+2i").
cplx parse_complex(const std::string& text);

}  // namespace gwm
