#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bnsl::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kInputError = 2, kResourceRefusal = 3 };

/// One measured (or extrapolated) solver run.
struct RunReport {
  std::string algorithm;
  int n = 0;
  int p = 0;
  int s = 0;
  int depth = 0;
  int threads = 1;
  std::uint64_t seed = 0;
  double score = 0.0;
  std::uint64_t units = 0;
  double unit_seconds = 0.0;
  double total_seconds = 0.0;
  std::uint64_t peak_table_entries = 0;
  std::uint64_t score_evaluations = 0;
  bool extrapolated = false;
};

/// Fixed column order shared by `solve --csv` and `bench`.
std::string report_csv_header();
std::string report_csv_row(const RunReport& report);

/// Entry point behind the `bnsl` executable; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnsl::cli
