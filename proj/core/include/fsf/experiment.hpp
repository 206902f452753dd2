#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fsf/config.hpp"
#include "fsf/metrics.hpp"
#include "fsf/simulator.hpp"

namespace fsf {

struct CellKey {
  RouterKind router = RouterKind::fsf;
  double buffer_mb = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct RunRecord {
  CellKey cell;
  std::uint64_t seed = 0;
  MetricsRecord metrics;
};

/// Mean and sample standard deviation over seeds. Delay and cost average the
/// seeds where they are defined and are absent when none is.
struct SummaryStat {
  std::optional<double> mean;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
};

SummaryStat summarize(const std::vector<double>& values);

struct AggregateRow {
  CellKey cell;
  std::size_t seed_count = 0;
  SummaryStat delivery_ratio;
  SummaryStat average_delay;
  SummaryStat average_cost;
  SummaryStat efficiency;
};

struct ExperimentResults {
  std::vector<RunRecord> runs;     // grid order, seeds innermost
  std::vector<AggregateRow> rows;  // grid order
};

/// The trace and per-node communities a run uses for `seed`.
struct RunInput {
  ContactTrace trace;
  std::vector<CommunityId> community;
};
RunInput load_run_input(const RunConfig& config, std::uint64_t seed);

/// Applies one grid point to the base configuration.
std::pair<ScenarioConfig, RouterConfig> cell_config(const RunConfig& base, const CellKey& cell,
                                                    const std::vector<CommunityId>& community);

SimulationResult run_cell(const RunConfig& base, const CellKey& cell, const RunInput& input, std::uint64_t seed,
                          const SimulationOptions& options = {});

/// Cartesian product router x buffer x alpha x beta x seed; every run is
/// independent. Output does not depend on the thread count.
ExperimentResults run_experiment(const ExperimentConfig& config,
                                 const std::function<void(std::size_t done, std::size_t total)>& progress = {});

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs);

/// Runs `count` independent jobs over `threads` workers (0: hardware concurrency).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job);

}  // namespace fsf
