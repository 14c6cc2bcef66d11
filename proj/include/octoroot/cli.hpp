#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "octoroot/basin.hpp"
#include "octoroot/image_io.hpp"
#include "octoroot/methods.hpp"

namespace octoroot::cli {

enum ExitCode : int {
  kSuccess = 0,
  kComparisonFailed = 1,  // report: some row outside tolerance
  kUsage = 2,
  kNumerical = 3,
  kIo = 4,
};

enum class Command { solve, order, basin, report };
enum class OutputFormat { text, csv, json };

/// Everything a subcommand needs, after flags, config file, environment and
/// defaults have been merged.
struct RunConfig {
  Command command = Command::solve;
  std::vector<MethodId> methods;
  std::vector<std::string> problems;
  std::optional<std::string> expr;
  std::vector<std::string> roots;
  std::optional<std::string> guess;
  unsigned digits = 1200;
  std::optional<int> max_iter;
  std::optional<std::string> tol;
  GridSpec grid;
  bool high_precision = false;
  unsigned threads = 0;
  OutputFormat format = OutputFormat::text;
  ImageFormat image = ImageFormat::ppm;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> only;
};

/// Parses argv-style arguments (without the program name). On failure the
/// message goes to err and the exit code is returned instead.
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kSuccess;
};
ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by execute.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace octoroot::cli
