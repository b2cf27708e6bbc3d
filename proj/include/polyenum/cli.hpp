#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyenum/orchestrator.hpp"

namespace polyenum {

enum class RunMode { sequential, parallel };

struct RunConfig {
  RunMode mode = RunMode::parallel;
  std::size_t workers = 1;
  std::size_t init_depth = 2;
  std::size_t max_cobases = 50;
  std::size_t max_depth = 2;
  std::size_t lmin = 3;
  std::size_t lmax = 3;
  std::size_t scale = 100;
  std::optional<std::string> histogram;
  std::optional<std::string> checkpoint;
  std::optional<std::string> restart;
  std::optional<std::size_t> stop_after;
  std::optional<double> time_limit;
  Binding binding = Binding::in_process;
  std::string input = "-";  // "-" reads standard input
  std::optional<std::string> output;
};

/// cores - 2, at least 1.
std::size_t default_workers(std::size_t cores);

/// Parses the arguments of `polyenum [run] ...` (program name excluded).
/// Throws UsageError.
RunConfig parse_cli(const std::vector<std::string>& args);

/// Master settings for a parallel run of cfg.
MasterConfig master_config(const RunConfig& cfg);

std::string usage();

}  // namespace polyenum
