#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cz/report.hpp"

namespace cz {

enum class Command : std::uint8_t { verify, transform, generate, grove, index };

std::string_view to_string(Command command);
/// Throws Errc::parse_error for unknown names.
Command parse_command(std::string_view name);

struct RunConfig {
  Command command = Command::verify;
  std::string surface;                 ///< fixture name, or "rotational" for transform
  std::vector<double> params;
  std::optional<std::string> profile;  ///< profile spec, see parse_profile
  int nu = 128;
  int nv = 128;
  Tolerances tolerances;
  std::string out_dir;                 ///< empty: nothing is written
  std::optional<int> expect_index;
};

/// "NUxNV" -> (nu, nv). Throws Errc::parse_error.
std::pair<int, int> parse_grid(std::string_view text);
/// Comma separated reals. Throws Errc::parse_error.
std::vector<double> parse_params(std::string_view text);
/// "name=value" with a positive value. Throws Errc::parse_error.
std::pair<std::string, double> parse_tolerance(std::string_view text);

struct RunOutput {
  Report report;
  std::map<std::string, CsvTable> tables;  ///< file name -> table
};

/// Check suites. Errors raised by a module are recorded as failed checks
/// named after the step; configuration errors (unknown fixture, bad profile
/// spec, missing argument) propagate as cz::Error.
RunOutput cmd_verify(const RunConfig& config);
RunOutput cmd_transform(const RunConfig& config);
RunOutput cmd_generate(const RunConfig& config);
RunOutput cmd_grove(const RunConfig& config);
RunOutput cmd_index(const RunConfig& config);
RunOutput run_command(const RunConfig& config);

/// Runs the command, writes report.json and the CSV tables into out_dir
/// when set, and returns the process exit code: 0 when every check passes,
/// 2 when a check fails, 1 on a configuration or I/O error. Diagnostics go
/// to `log`.
int run(const RunConfig& config, std::ostream& log);

}  // namespace cz
