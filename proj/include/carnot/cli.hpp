// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace carnot::cli {

enum class Command {
  Validate,
  Stratify,
  Sublaplacian,
  EquivFrames,
  HeisSpectrum,
  HeisIsometry,
  AnalyzeMap,
  Verify,
  HeisGroup,
};

enum class OutputFormat { Text, Json };

struct RunConfig {
  Command command = Command::Validate;
  /// File paths; for heis-group the scale factors r_1..r_n instead.
  std::vector<std::string> inputs;
  double tolerance = 1e-9;
  unsigned probe_degree = 4;
  OutputFormat format = OutputFormat::Text;
};

inline constexpr int kPositive = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

struct RunResult {
  int exit_code = kInputError;
  std::string report;
};

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);
/// Number of positional inputs the command takes; nullopt for "one or more".
std::optional<std::size_t> input_count(Command command);

/// Never throws; malformed input becomes exit code 2 with the error in the report.
RunResult run(const RunConfig& config);

}  // namespace carnot::cli
