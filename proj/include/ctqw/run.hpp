#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ctqw {

enum class Command { generate, spectrum, propagate, limit, collapse, compare };
enum class OutputFormat { csv, json };
enum class Direction { left_right, top_bottom };

// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalidInput = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

struct RunConfig {
  Command command = Command::propagate;
  // Exactly one graph source.
  std::optional<int> generation;
  std::optional<std::string> graph_file;

  double gamma = 1.0;
  int start = 1;  // node id, or cluster index for `collapse`
  std::vector<double> times;
  std::optional<double> degeneracy_tol;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> output;            // stdout when unset
  std::optional<std::string> structure_output;  // collapse: partition and reduced matrix as JSON
  std::optional<std::string> output_dir;        // base for relative output paths
  Direction direction = Direction::left_right;
  std::vector<std::pair<int, int>> pairs;  // compare: (j, k)
  bool version_header = false;
};

// t_i = i * t_max / steps for i = 0..steps.
std::vector<double> uniform_times(double t_max, int steps);
// "0,1.5,20" -> {0, 1.5, 20}; throws std::invalid_argument.
std::vector<double> parse_times(const std::string& list);
// "10:1,7:4" -> {(10,1), (7,4)}; throws std::invalid_argument.
std::vector<std::pair<int, int>> parse_pairs(const std::string& list);

// Fills unset fields from CTQW_DEGENERACY_TOL and CTQW_OUTPUT_DIR.
RunConfig with_environment(RunConfig config);

// Writes to config.output (or `out`), reports errors on `err`, returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// 12 significant digits; the shared number format of every data file.
std::string format_number(double value);

}  // namespace ctqw
