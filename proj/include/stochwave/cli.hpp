#pragma once

#include "stochwave/waveform.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stochwave::cli {

enum class Command { generate, acorr, expect, frame, experiment };
enum class OutputFormat { csv, json, binary };

/// Exit codes of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_runtime = 3;

/// Raised for any precondition violation detected before computation.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::generate;
  // generate: discrete|periodic|vector|continuous; expect: aperiodic|periodic|vector;
  // frame: sliding|sensing; experiment: cond-vs-M|sv-tail|rip.
  std::string kind;
  WaveformParams params;

  Index n = 0;        // generate: n_max, period, or m_max
  Index N = 0;        // truncation (aperiodic/vector) or period (periodic expect)
  Index d = 2;
  Index M = 0;
  double T = 0.0;
  double dt = 0.01;
  std::optional<Index> k;
  std::optional<double> s;
  Index k_max = 0;
  Index trials = 1;
  std::vector<Index> M_list;
  double eps0 = 0.05;
  double r = 0.5;
  Index sparsity = 4;

  int threads = 1;
  std::string in_path;
  std::string out_path;  // empty: stdout
  std::optional<OutputFormat> format;
};

/// Parses argv (including the program name). Throws ValidationError on bad
/// syntax; returns std::nullopt after printing help to `out`.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Checks every precondition of the dispatched operation; throws
/// ValidationError naming the violated one.
void validate(const RunConfig& config);

/// Validates and runs; writes the report to config.out_path or `out`.
/// Returns an exit code (0, 2 or 3) and never throws.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "a:b:step" or "a,b,c" into a list of integers.
std::vector<Index> parse_index_list(const std::string& text);

}  // namespace stochwave::cli
