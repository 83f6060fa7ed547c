#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace imann {

/// Provenance of one training attempt.
struct RunRecord {
  std::string formulation;
  std::string method;  // "imann" or "dnn"
  std::string arch;
  int dataset_size = 0;
  int restart_index = 0;
  std::uint64_t seed = 0;
  double fitness = 0.0;         // F: sum of squared errors at training points
  double error_integral = 0.0;  // R over the formulation domain
  long evals = 0;               // objective evaluations (imann) or epochs (dnn)
  long wall_time_ms = 0;
  std::string status;  // "ok", "aborted", or "failed"

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Exact CSV header emitted and expected by the record I/O.
extern const char* const kCsvHeader;

/// Writes records in the documented column order. Doubles are printed with
/// round-trip precision so a re-run reproduces files byte for byte (wall
/// time aside).
void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);

/// Parses a file produced by emit_csv; validates the header.
std::vector<RunRecord> parse_csv(const std::filesystem::path& path);

/// Writes one whitespace-delimited (dataset_size, error_integral) file per
/// (formulation, method) series found in the records, named
/// plot_<formulation>_<method>.dat under dir. Rows are sorted by size.
void emit_plot_data(const std::vector<RunRecord>& best_records,
                    const std::filesystem::path& dir);

}  // namespace imann
