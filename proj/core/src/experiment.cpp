#include "fsf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace fsf {

SummaryStat summarize(const std::vector<double>& values) {
  SummaryStat s;
  s.n = values.size();
  if (values.empty()) return s;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.mean = mean;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

RunInput load_run_input(const RunConfig& config, std::uint64_t seed) {
  RunInput input;
  if (config.trace_file) {
    input.trace = parse_contact_trace_file(*config.trace_file).trace;
    input.community = config.trace_community;
    if (!input.community.empty() && input.community.size() != input.trace.node_count) {
      throw SimulationError("community list has " + std::to_string(input.community.size()) + " entries, trace has " +
                            std::to_string(input.trace.node_count) + " nodes");
    }
  } else {
    auto synthetic = generate_synthetic_trace(config.synthetic, seed);
    input.trace = std::move(synthetic.trace);
    input.community = std::move(synthetic.community);
  }
  return input;
}

std::pair<ScenarioConfig, RouterConfig> cell_config(const RunConfig& base, const CellKey& cell,
                                                    const std::vector<CommunityId>& community) {
  ScenarioConfig scenario = base.scenario;
  scenario.buffer_capacity = static_cast<Bytes>(std::llround(cell.buffer_mb * static_cast<double>(kBytesPerMB)));
  scenario.community = community;
  RouterConfig router = base.router;
  router.kind = cell.router;
  router.fsf.assessment.resources = {cell.alpha, cell.beta};
  router.fsf.assessment.f_d = scenario.reputation.f_d;
  return {std::move(scenario), std::move(router)};
}

SimulationResult run_cell(const RunConfig& base, const CellKey& cell, const RunInput& input, std::uint64_t seed,
                          const SimulationOptions& options) {
  const auto [scenario, router] = cell_config(base, cell, input.community);
  return run_simulation(input.trace, scenario, router, seed, options);
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs) {
  std::vector<AggregateRow> rows;
  std::size_t i = 0;
  while (i < runs.size()) {
    std::size_t j = i;
    while (j < runs.size() && runs[j].cell == runs[i].cell) ++j;
    std::vector<double> ratio, delay, cost, eff;
    for (std::size_t k = i; k < j; ++k) {
      const auto& m = runs[k].metrics;
      ratio.push_back(m.delivery_ratio);
      eff.push_back(m.efficiency);
      if (m.average_delay) delay.push_back(*m.average_delay);
      if (m.average_cost) cost.push_back(*m.average_cost);
    }
    AggregateRow row;
    row.cell = runs[i].cell;
    row.seed_count = j - i;
    row.delivery_ratio = summarize(ratio);
    row.average_delay = summarize(delay);
    row.average_cost = summarize(cost);
    row.efficiency = summarize(eff);
    rows.push_back(row);
    i = j;
  }
  return rows;
}

ExperimentResults run_experiment(const ExperimentConfig& config,
                                 const std::function<void(std::size_t, std::size_t)>& progress) {
  config.check();
  RunConfig base = config.base;
  prepare_model(base);

  // One trace per seed, shared by every cell (common random numbers).
  std::vector<RunInput> inputs(config.seeds.size());
  parallel_for(inputs.size(), config.threads,
               [&](std::size_t s) { inputs[s] = load_run_input(base, config.seeds[s]); });

  ExperimentResults results;
  for (RouterKind r : config.routers) {
    for (double b : config.buffers_mb) {
      for (double a : config.alphas) {
        for (double be : config.betas) {
          for (std::uint64_t seed : config.seeds) results.runs.push_back({{r, b, a, be}, seed, {}});
        }
      }
    }
  }

  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  const std::size_t seeds = config.seeds.size();
  parallel_for(results.runs.size(), config.threads, [&](std::size_t i) {
    auto& run = results.runs[i];
    const auto sim = run_cell(base, run.cell, inputs[i % seeds], run.seed);
    run.metrics = compute_metrics(sim.log);
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(++done, results.runs.size());
    }
  });
  results.rows = aggregate(results.runs);
  return results;
}

}  // namespace fsf
