#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fsf/experiment.hpp"
#include "fsf/metrics.hpp"

namespace fsf {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReportFormat : std::uint8_t { csv, plot_data };

ReportFormat parse_report_format(std::string_view text);

inline constexpr const char* kResultsHeader =
    "router,buffer_mb,alpha,beta,seed_count,delivery_ratio,ratio_sd,avg_delay_s,delay_sd,avg_cost,cost_sd,efficiency,"
    "eff_sd";

/// Absent means are written as empty fields.
void write_results_csv(const std::vector<AggregateRow>& rows, std::ostream& out);
std::vector<AggregateRow> read_results_csv(std::istream& in);

/// Per-run metrics, one line per (cell, seed).
void write_runs_csv(const std::vector<RunRecord>& runs, std::ostream& out);

/// One key,value line per metric of a single run.
void write_metrics(const MetricsRecord& metrics, std::ostream& out);

/// Writes results.csv, or one `<router>_<metric>.dat` series per router and
/// metric. Returns the files written.
std::vector<std::filesystem::path> emit_report(const std::vector<AggregateRow>& rows, ReportFormat format,
                                               const std::filesystem::path& dir);

}  // namespace fsf
