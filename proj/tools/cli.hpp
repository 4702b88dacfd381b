#pragma once

// Experiment harness behind the `sadisc` command-line tool.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sadisc::cli {

struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;  // flag name without dashes -> raw value
  std::uint64_t seed = 0;
  std::string output_path;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"count", "cover", "dioph", "discrepancy", "dynamics", "lowerbound", "sweep"};
  return names;
}

/// Sorted "key=value" lines; the output path is excluded so that runs writing to
/// different places hash alike.
std::string canonical_form(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Runs one experiment. Exit status 0 on success, 1 for usage or input errors,
/// 2 when the computation fails or refuses (budgets, failed constructions,
/// flagged dynamics). Messages go to `err`.
int run(const ExperimentConfig& cfg, std::ostream& err);

/// Argument parsing front end.
int main_entry(int argc, char** argv);

}  // namespace sadisc::cli
