#pragma once

// Command-line front end. The executable in tools/ only forwards to run().

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace spence_abel::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2 };

/// Options shared by every subcommand after flags, config file and defaults
/// have been merged (in that order of precedence).
struct RunConfig {
  std::string command;
  int grid_n = 0;  // 0 = per-command default
  double abs_tol = 1e-8;
  double rel_tol = 0.0;
  std::uint64_t seed = 1;
  std::string output_path;  // empty = stdout
  std::string format = "csv";
  std::string formula_variant = "body";

  void validate() const;
  nlohmann::json to_json() const;
};

/// Locale-independent decimal text with 17 significant digits.
std::string format_double(double v);

/// Parses argv, runs the subcommand and returns the exit code. Tables go to
/// `out` (or --out), diagnostics and the resolved config to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spence_abel::cli
