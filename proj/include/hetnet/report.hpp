#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/engine.hpp"

namespace hetnet {

/// `# scenario_hash=<hex> algo=<name> seed=<n> slots=<n>`, the first line of
/// every per-run CSV.
struct RunHeader {
  std::string scenario_hash;
  std::string algo;
  std::uint64_t seed = 0;
  int slots = 0;
};

inline constexpr const char* kRunColumns = "slot,overall_bps,effective_bps,satisfied,decision_us";

/// Per-slot CSV. decision_us is left empty unless `timing` is set, so that
/// untimed runs are byte-for-byte reproducible.
void write_run_csv(std::ostream& out, const RunHeader& header, const RunLog& log, bool timing);
void write_run_csv(const std::filesystem::path& path, const RunHeader& header, const RunLog& log,
                   bool timing);

/// Per-run means read back from a run CSV.
struct RunMeans {
  RunHeader header;
  double overall_bps = 0.0;
  double effective_bps = 0.0;
  double satisfied = 0.0;
  std::optional<double> decision_us;
};

/// Throws Error on a malformed file.
RunMeans read_run_csv(const std::filesystem::path& path);

/// One aggregate row: means over seeds of per-run means.
struct AggregateRow {
  std::string sweep;  // "key=value", or empty without a sweep
  std::string algo;
  std::string scenario_hash;
  int seeds = 0;
  int slots = 0;
  double overall_bps = 0.0;
  double effective_bps = 0.0;
  double satisfied = 0.0;
  std::optional<double> decision_us;
};

AggregateRow aggregate(std::string sweep, const RunHeader& header,
                       const std::vector<RunLog>& logs, bool timing);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

/// Long-format comparison row: one per (algorithm, metric).
struct SummaryRow {
  std::string algo;
  std::string metric;  // overall_bps | effective_bps | satisfied | decision_us
  int n = 0;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int rank = 0;  // 1 is best: highest rate/satisfied, lowest decision time
};

/// Mean and two-sided 95% Student-t interval of `xs` (zero width for n < 2).
void mean_ci95(const std::vector<double>& xs, double& mean, double& low, double& high);

/// Collects every seed_*.csv under `dirs` (recursively) and summarises per
/// algorithm. Throws Error if the files carry more than one scenario hash or
/// if nothing is found.
std::vector<SummaryRow> summarize(const std::vector<std::filesystem::path>& dirs);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// "%.6g" formatting used by every CSV.
std::string format_number(double v);

}  // namespace hetnet
