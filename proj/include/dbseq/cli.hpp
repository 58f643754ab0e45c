#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dbseq/words.hpp"

namespace dbseq::cli {

enum ExitStatus : int { kOk = 0, kValidationError = 1, kPropertyViolation = 2 };

struct CliConfig {
  std::string subcommand;

  // Sequence selection (generate, verify, analyze, discrepancy).
  std::string kind = "opposite";  // opposite | same | higher | custom
  unsigned q = 2;
  unsigned d = 1;
  std::optional<unsigned> n;
  unsigned start = 0;
  std::optional<std::string> matrix_path;
  std::optional<std::string> init;
  std::optional<std::string> input;  // verify/discrepancy: read digits from file ("-" = stdin)

  // map
  std::string emit = "compact";  // image | compact | report

  // analyze
  std::optional<unsigned> rank;
  std::optional<std::string> cycle_vertex;

  // table
  std::vector<unsigned> table_qs;
  unsigned n_min = 2;
  unsigned n_max = 0;
  WordIndex max_words = kMaxWindows;
  bool serial = false;
  int threads = 0;

  bool census = false;   // verify: include the full window census
  bool profile = false;  // discrepancy: include prefix gaps

  std::string format = "plain";  // plain | json | csv
  std::optional<std::string> out;
};

// Executes a validated configuration; documents go to `out` (or the --out
// file), diagnostics to `err`.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and runs them.
int run_args(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace dbseq::cli
