#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fsf/fsf.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kInputError = 2;

// Input problems: unreadable or malformed files, inconsistent configuration.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir.string() + "': " + ec.message());
}

struct RunFlags {
  std::string config;
  std::string trace;
  bool synthetic = false;
  std::optional<std::string> router;
  std::optional<double> buffer_mb;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out = "out";
  bool check_invariants = false;
  double snapshot_interval = 0.0;
  std::string format = "both";
};

fsf::ExperimentConfig load(const RunFlags& f) {
  fsf::ExperimentConfig config;
  if (!f.config.empty()) config = fsf::load_config(f.config);
  if (!f.trace.empty()) config.base.trace_file = f.trace;
  if (f.synthetic) config.base.trace_file.reset();
  if (f.router) config.routers = {fsf::parse_router_kind(*f.router)};
  if (f.buffer_mb) config.buffers_mb = {*f.buffer_mb};
  if (f.alpha) config.alphas = {*f.alpha};
  if (f.beta) config.betas = {*f.beta};
  if (f.seed) config.seeds = {*f.seed};
  if (f.threads) config.threads = *f.threads;
  config.check();
  return config;
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "Configuration file")->check(CLI::ExistingFile);
  auto* trace = cmd->add_option("--trace", f.trace, "Contact trace file");
  cmd->add_flag("--synthetic", f.synthetic, "Use the synthetic community scenario")->excludes(trace);
  cmd->add_option("--router", f.router, "fsf, epidemic or prophet");
  cmd->add_option("--buffer-mb", f.buffer_mb, "Buffer capacity in MB")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", f.alpha, "Minimum battery fraction")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--beta", f.beta, "Maximum memory-used fraction")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--out", f.out, "Output directory");
}

int simulate(const RunFlags& f) {
  auto config = load(f);
  if (config.routers.size() != 1 || config.buffers_mb.size() != 1 || config.alphas.size() != 1 ||
      config.betas.size() != 1) {
    std::cerr << "note: the configuration describes a grid; simulate runs its first point\n";
  }
  fsf::RunConfig base = config.base;
  fsf::prepare_model(base);
  const std::uint64_t seed = config.seeds.front();
  const fsf::CellKey cell{config.routers.front(), config.buffers_mb.front(), config.alphas.front(),
                          config.betas.front()};
  const auto input = fsf::load_run_input(base, seed);
  fsf::SimulationOptions options;
  options.check_invariants = f.check_invariants;
  options.reputation_snapshot_interval = f.snapshot_interval;
  const auto result = fsf::run_cell(base, cell, input, seed, options);
  const auto metrics = fsf::compute_metrics(result.log);

  const std::filesystem::path dir(f.out);
  make_dir(dir);
  {
    auto out = open_out(dir / "events.csv");
    fsf::write_event_log_csv(result.log, out);
  }
  {
    auto out = open_out(dir / "metrics.csv");
    fsf::write_metrics(metrics, out);
  }
  if (!result.snapshots.empty()) {
    auto out = open_out(dir / "reputation.csv");
    fsf::write_reputation_csv_header(out);
    for (const auto& s : result.snapshots) {
      out << s.time << ',' << s.observer << ',' << s.subject << ',' << s.reputation << ',' << s.observations << '\n';
    }
  }
  {
    auto out = open_out(dir / "energy.csv");
    out << "node,epoch,consumed\n";
    for (std::size_t n = 0; n < result.energy.consumed.size(); ++n) {
      for (std::size_t e = 0; e < result.energy.consumed[n].size(); ++e) {
        out << n << ',' << e << ',' << result.energy.consumed[n][e] << '\n';
      }
    }
  }

  std::cout << "router " << fsf::to_string(cell.router) << ", buffer " << cell.buffer_mb << " MB, seed " << seed
            << '\n';
  fsf::write_metrics(metrics, std::cout);
  return 0;
}

int sweep(const RunFlags& f) {
  const auto config = load(f);
  const auto results = fsf::run_experiment(config, [](std::size_t done, std::size_t total) {
    std::cerr << "\rruns " << done << '/' << total << std::flush;
    if (done == total) std::cerr << '\n';
  });
  const std::filesystem::path dir(f.out);
  make_dir(dir);
  std::vector<std::filesystem::path> written;
  if (f.format == "csv" || f.format == "both") {
    auto files = fsf::emit_report(results.rows, fsf::ReportFormat::csv, dir);
    written.insert(written.end(), files.begin(), files.end());
    auto runs = open_out(dir / "runs.csv");
    fsf::write_runs_csv(results.runs, runs);
    written.push_back(dir / "runs.csv");
  }
  if (f.format == "plot-data" || f.format == "both") {
    auto files = fsf::emit_report(results.rows, fsf::ReportFormat::plot_data, dir / "plot");
    written.insert(written.end(), files.begin(), files.end());
  }
  fsf::write_results_csv(results.rows, std::cout);
  std::cerr << "wrote " << written.size() << " files under " << dir.string() << '\n';
  return 0;
}

int validate(const std::string& path, bool strict) {
  fsf::ParseOptions options;
  options.repair = !strict;
  const auto parsed = fsf::parse_contact_trace_file(path, options);
  for (const auto& issue : parsed.repairs) {
    std::cout << "repaired " << fsf::to_string(issue.kind) << " at t=" << issue.time << " (" << issue.node_a << ','
              << issue.node_b << ") " << issue.detail << '\n';
  }
  const auto report = fsf::validate_trace(parsed.trace);
  fsf::print_report(report, std::cout);
  return report.ok() ? 0 : kInputError;
}

int train(const std::string& path, double smoothing, const std::string& out_path, const std::string& classify) {
  const auto data = fsf::read_training_csv_file(path);
  const auto model = fsf::train_naive_bayes(data, smoothing);
  if (out_path.empty()) {
    fsf::write_model(model, std::cout);
  } else {
    auto out = open_out(out_path);
    fsf::write_model(model, out);
  }
  if (!classify.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(classify);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 4) throw fsf::FriendshipError("--classify expects fm,cd,ac,atm");
    fsf::FriendshipInstance x{fsf::parse_level(parts[0]), fsf::parse_level(parts[1]), fsf::parse_level(parts[2]),
                              fsf::parse_level(parts[3])};
    x.check();
    const double strong = fsf::nb_score(model, x, fsf::Friendship::strong);
    const double weak = fsf::nb_score(model, x, fsf::Friendship::weak);
    std::cout << "score strong " << strong << ", weak " << weak << " -> "
              << fsf::to_string(fsf::classify_friendship(model, x)) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-driven opportunistic network simulator (FSF, Epidemic, PRoPHET)"};
  app.require_subcommand(1);

  RunFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "Run one simulation and write its event log and metrics");
  add_run_flags(sim, sim_flags);
  sim->add_flag("--check-invariants", sim_flags.check_invariants, "Validate engine state after every event");
  sim->add_option("--snapshot-interval", sim_flags.snapshot_interval, "Reputation snapshot period in seconds")
      ->check(CLI::NonNegativeNumber);

  RunFlags sweep_flags;
  auto* sw = app.add_subcommand("sweep", "Run the experiment grid from a configuration file");
  add_run_flags(sw, sweep_flags);
  sw->add_option("--threads", sweep_flags.threads, "Worker threads (0: all cores)");
  sw->add_option("--format", sweep_flags.format, "csv, plot-data or both")
      ->check(CLI::IsMember({"csv", "plot-data", "both"}));

  std::string trace_path;
  bool strict = false;
  auto* val = app.add_subcommand("validate-trace", "Parse a contact trace and report structural problems");
  val->add_option("trace", trace_path, "Trace file")->required();
  val->add_flag("--strict", strict, "Report alternation faults instead of repairing them");

  std::string training_path, model_out, classify;
  double smoothing = 0.0;
  auto* nb = app.add_subcommand("train-nb", "Fit a friendship classifier from a training CSV and dump it");
  nb->add_option("training", training_path, "CSV with header fm,cd,ac,atm,strength")->required();
  nb->add_option("--smoothing", smoothing, "Additive smoothing")->check(CLI::NonNegativeNumber);
  nb->add_option("--out", model_out, "Write the model here instead of stdout");
  nb->add_option("--classify", classify, "Classify one instance, e.g. high,high,weak,high");

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (sim->parsed()) return simulate(sim_flags);
    if (sw->parsed()) return sweep(sweep_flags);
    if (val->parsed()) return validate(trace_path, strict);
    if (nb->parsed()) return train(training_path, smoothing, model_out, classify);
    std::cout << "fsfsim " << fsf::kVersion << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
