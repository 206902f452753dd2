// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fsf/fsf.hpp"
#include "support/log_checks.hpp"
#include "support/oracles.hpp"

using namespace fsf;

namespace {

// Tolerances.
constexpr double kNbScoreTol = 0.001;
constexpr double kNbGuard = 1e-12;  // 0.016 sits on the edge of 0.015 +- 0.001
constexpr double kSigmoidTol = 0.01;
constexpr int kOracleDatasets = 200;
constexpr double kOracleSeconds = 5.0;
constexpr double kSweepSeconds = 60.0;
constexpr double kMinAccuracy = 0.90;
constexpr double kMaxSpread = 0.25;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FriendshipDataset worked_example() {
  FriendshipDataset rows;
  auto add = [&](Friendship label, int n, int fm_high, int cd_high, int ac_weak, int atm_high) {
    for (int i = 0; i < n; ++i) {
      FriendshipInstance x;
      x.fm = i < fm_high ? Level::high : (i % 2 ? Level::average : Level::weak);
      x.cd = i < cd_high ? Level::high : Level::average;
      x.ac = i < ac_weak ? Level::weak : Level::high;
      x.atm = (n - 1 - i) < atm_high ? Level::high : Level::weak;
      rows.push_back({x, label});
    }
  };
  add(Friendship::strong, 5, 2, 4, 2, 4);
  add(Friendship::weak, 10, 3, 5, 4, 4);
  return rows;
}

RouterConfig router_of(RouterKind kind) {
  RouterConfig r;
  r.kind = kind;
  r.model = train_naive_bayes(builtin_training_set());
  return r;
}

Outcome c1() {
  const auto model = train_naive_bayes(worked_example());
  const FriendshipInstance x{Level::high, Level::high, Level::weak, Level::high};
  const double strong = nb_score(model, x, Friendship::strong);
  const double weak = nb_score(model, x, Friendship::weak);
  const auto label = classify_friendship(model, x);
  const bool ok = std::abs(strong - 0.034) <= kNbScoreTol + kNbGuard && std::abs(weak - 0.015) <= kNbScoreTol + kNbGuard &&
                  label == Friendship::strong;
  return {ok, fmt("strong %.5f, weak %.5f", strong, weak) + " -> " + to_string(label)};
}

Outcome c2() {
  const auto model = train_naive_bayes(worked_example());
  const auto w = nb_prior_ratio(model, Friendship::weak);
  const auto s = nb_prior_ratio(model, Friendship::strong);
  const bool ok = w.numerator == 10 && w.denominator == 15 && s.numerator == 5 && s.denominator == 15 &&
                  nb_prior(model, Friendship::weak) == 10.0 / 15.0 && nb_prior(model, Friendship::strong) == 5.0 / 15.0;
  return {ok, fmt("weak %g/%g, strong %g/%g", w.numerator, w.denominator, s.numerator, s.denominator)};
}

Outcome c3() {
  const double a = cooperation_probability(10, 4, 5);
  const double b = cooperation_probability(8, 7, 5);
  return {std::abs(a - 0.94) <= kSigmoidTol && std::abs(b - 0.61) <= kSigmoidTol, fmt("(10,4,5) %.4f, (8,7,5) %.4f", a, b)};
}

Outcome c4() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 30), three(0, 2), two(0, 1);
  const auto instances = all_instances();
  std::size_t mismatches = 0;
  for (int d = 0; d < kOracleDatasets; ++d) {
    FriendshipDataset rows(static_cast<std::size_t>(size(rng)));
    for (auto& r : rows) {
      r.instance = {static_cast<Level>(three(rng)), static_cast<Level>(three(rng)), two(rng) ? Level::high : Level::weak,
                    two(rng) ? Level::high : Level::weak};
      r.label = two(rng) ? Friendship::strong : Friendship::weak;
    }
    const auto model = train_naive_bayes(rows);
    for (const auto& x : instances) mismatches += classify_friendship(model, x) != oracle::naive_bayes_label(rows, x);
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && instances.size() == 36 && secs < kOracleSeconds,
          fmt("%g datasets x %g instances, %g mismatches, %.2f s", kOracleDatasets, double(instances.size()),
              double(mismatches), secs)};
}

Outcome c5() {
  struct Case {
    const char* name;
    RunConfig config;
    CellKey cell;
    std::uint64_t seed;
  };
  std::vector<Case> cases;
  {
    RunConfig c;
    c.synthetic.duration = 6 * 3600;
    cases.push_back({"fsf synthetic", c, {RouterKind::fsf, 40, 0.3, 0.7}, 7});
  }
  {
    RunConfig c;
    c.synthetic.duration = 6 * 3600;
    c.scenario.individually_selfish_fraction = 0.2;
    c.scenario.detection = {0.05, 0.05};
    c.scenario.merge_reputation = true;
    cases.push_back({"epidemic selfish", c, {RouterKind::epidemic, 10, 0.3, 0.7}, 3});
  }
  {
    RunConfig c;
    c.synthetic.node_count = 20;
    c.synthetic.community_sizes = {10, 10};
    c.synthetic.duration = 86'400;
    c.scenario.scan_mode = ScanMode::periodic;
    c.scenario.scan_period = 600;
    cases.push_back({"prophet periodic", c, {RouterKind::prophet, 20, 0.2, 0.8}, 11});
  }
  std::string detail;
  bool ok = true;
  for (auto& c : cases) {
    prepare_model(c.config);
    std::string logs[2], reports[2];
    for (int k = 0; k < 2; ++k) {
      const auto input = load_run_input(c.config, c.seed);
      const auto r = run_cell(c.config, c.cell, input, c.seed);
      logs[k] = event_log_csv(r.log);
      std::ostringstream out;
      write_metrics(compute_metrics(r.log), out);
      reports[k] = out.str();
    }
    const bool same = logs[0] == logs[1] && reports[0] == reports[1] && !logs[0].empty();
    ok = ok && same;
    detail += std::string(detail.empty() ? "" : ", ") + c.name + (same ? " identical" : " differs");
  }
  return {ok, detail};
}

Outcome c6() {
  RunConfig c;
  c.synthetic.duration = 86'400;
  prepare_model(c);
  const auto input = load_run_input(c, 4);
  const auto r = run_cell(c, {RouterKind::epidemic, 40, 0.3, 0.7}, input, 4);
  const double cost = c.scenario.energy.cost_per_op;
  const auto rebuilt = checks::energy_from_log(r.log, input.trace.node_count, cost);
  std::size_t ops = 0;
  for (const auto& rec : r.log.records()) {
    ops += rec.type == RecordType::scan;
    ops += 2 * (rec.type == RecordType::forwarded);
  }
  double total = 0;
  for (const auto& node : r.energy.consumed) {
    for (double e : node) total += e;
  }
  const bool ok = rebuilt == r.energy.consumed && total == cost * static_cast<double>(ops);
  return {ok, fmt("%g operations, %g units consumed over %g nodes", double(ops), total, double(input.trace.node_count))};
}

// Shared default sweep for criteria 7, 9 and 10.
struct Sweep {
  ExperimentResults results;
  double seconds = 0;
  SimTime ttl = 0;
};

Sweep default_sweep() {
  Sweep s;
  ExperimentConfig config;
  s.ttl = config.base.scenario.messages.ttl;
  const auto t0 = std::chrono::steady_clock::now();
  s.results = run_experiment(config);
  s.seconds = seconds_since(t0);
  return s;
}

Outcome c7(const Sweep& s) {
  std::size_t late = 0, delivered = 0;
  double worst = 0;
  for (const auto& run : s.results.runs) {
    worst = std::max(worst, run.metrics.max_delay);
    late += run.metrics.max_delay > s.ttl;
    delivered += run.metrics.delivered;
  }
  return {late == 0 && !s.results.runs.empty(), fmt("%g runs, %g deliveries, max delay %.0f s, TTL %.0f s",
                                                    double(s.results.runs.size()), double(delivered), worst, s.ttl)};
}

Outcome c8() {
  const auto trace = [] {
    std::istringstream in("nodes 3 duration 7200\nI 0 1 0 7200\nI 0 2 0 7200\nI 1 2 0 7200\n");
    return parse_contact_trace(in).trace;
  }();
  ScenarioConfig s;
  s.buffer_capacity = Bytes{1} << 50;
  s.energy.capacity = 1e12;
  s.messages.interval = 60;
  s.messages.stop = 3600;
  s.messages.ttl = 1e6;
  const auto r = run_simulation(trace, s, router_of(RouterKind::epidemic), 1);
  const auto m = compute_metrics(r.log);
  return {m.created > 0 && m.delivery_ratio == 1.0,
          fmt("%g created, %g delivered, ratio %.4f", double(m.created), double(m.delivered), m.delivery_ratio)};
}

const AggregateRow* find_row(const std::vector<AggregateRow>& rows, RouterKind router, double mb) {
  for (const auto& r : rows) {
    if (r.cell.router == router && r.cell.buffer_mb == mb) return &r;
  }
  return nullptr;
}

Outcome c9(const Sweep& s) {
  const auto* fsf = find_row(s.results.rows, RouterKind::fsf, 40);
  const auto* epi = find_row(s.results.rows, RouterKind::epidemic, 40);
  if (!fsf || !epi || !fsf->average_cost.mean || !epi->average_cost.mean) return {false, "missing 40 MB rows"};
  const double fc = *fsf->average_cost.mean, ec = *epi->average_cost.mean;
  const double fe = *fsf->efficiency.mean, ee = *epi->efficiency.mean;
  const bool ok = fc < ec && fe > ee && s.seconds < kSweepSeconds;
  return {ok, fmt("cost fsf %.3f vs epidemic %.3f, efficiency fsf %.5f vs epidemic %.5f", fc, ec, fe, ee) +
                  fmt(", sweep %.1f s", s.seconds)};
}

Outcome c10(const Sweep& s) {
  bool ok = true;
  std::string detail;
  for (RouterKind router : {RouterKind::fsf, RouterKind::epidemic, RouterKind::prophet}) {
    std::vector<const AggregateRow*> curve;
    for (const auto& r : s.results.rows) {
      if (r.cell.router == router) curve.push_back(&r);
    }
    std::sort(curve.begin(), curve.end(), [](auto a, auto b) { return a->cell.buffer_mb < b->cell.buffer_mb; });
    int inversions = 0;
    bool within = true;
    for (std::size_t i = 1; i < curve.size(); ++i) {
      const double prev = *curve[i - 1]->delivery_ratio.mean, cur = *curve[i]->delivery_ratio.mean;
      if (cur < prev) {
        ++inversions;
        const double sd = std::max(curve[i - 1]->delivery_ratio.sd, curve[i]->delivery_ratio.sd);
        within = within && prev - cur <= sd;
      }
    }
    const bool curve_ok = curve.size() == 8 && inversions <= 1 && within;
    ok = ok && curve_ok;
    detail += std::string(detail.empty() ? "" : ", ") + to_string(router) + " " +
              fmt("%.4f->%.4f", *curve.front()->delivery_ratio.mean, *curve.back()->delivery_ratio.mean) +
              fmt(" (%g inversions)", inversions);
  }
  return {ok, detail};
}

Outcome c11() {
  std::string detail;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SyntheticScenarioConfig synthetic;
    synthetic.duration = 7 * 86'400;
    const auto st = generate_synthetic_trace(synthetic, seed);
    ScenarioConfig s;
    s.community = st.community;
    s.individually_selfish_fraction = 0.2;
    s.detection = {0.05, 0.05};
    s.reputation.delta = 1.0;
    s.reputation.f_d = 5.0;
    const auto r = run_simulation(st.trace, s, router_of(RouterKind::fsf), seed);
    const MaturityParams params;
    std::size_t correct = 0, judged = 0, mature = 0;
    for (const auto& node : r.nodes) {
      const auto v = classify_observed(node.reputation, params);
      if (v.maturity != Maturity::mature) continue;
      ++mature;
      for (std::size_t i = 0; i < v.observed.size(); ++i) {
        const bool selfish = r.nodes[v.observed[i]].ground_truth != SelfishClass::not_selfish;
        correct += selfish == v.judged_selfish[i];
        ++judged;
      }
    }
    const double acc = judged ? static_cast<double>(correct) / static_cast<double>(judged) : 0.0;
    ok = ok && mature > 0 && acc >= kMinAccuracy;
    if (!detail.empty()) detail += ", ";
    detail += fmt("seed %g %.3f (%g mature)", double(seed), acc, double(mature));
  }
  return {ok, detail};
}

Outcome c12() {
  ExperimentConfig config;
  config.routers = {RouterKind::fsf};
  config.buffers_mb = {40};
  config.alphas = {0.10, 0.20, 0.30};
  config.betas = {0.70, 0.80, 0.90};
  const auto results = run_experiment(config);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& row : results.rows) {
    lo = std::min(lo, *row.delivery_ratio.mean);
    hi = std::max(hi, *row.delivery_ratio.mean);
  }
  const double spread = hi > 0 ? (hi - lo) / hi : 0.0;
  return {results.rows.size() == 9 && spread < kMaxSpread,
          fmt("ratio %.4f..%.4f over 9 cells, relative spread %.3f", lo, hi, spread)};
}

}  // namespace

int main() {
  report(1, "naive bayes worked example", c1);
  report(2, "exact priors", c2);
  report(3, "cooperation sigmoid", c3);
  report(4, "classifier oracle equivalence", c4);
  report(5, "determinism", c5);
  report(6, "energy ledger", c6);
  Sweep sweep;
  try {
    sweep = default_sweep();
  } catch (const std::exception& e) {
    std::printf("default sweep failed: %s\n", e.what());
  }
  report(7, "ttl safety", [&] { return c7(sweep); });
  report(8, "epidemic sanity", c8);
  report(9, "fsf cost and efficiency", [&] { return c9(sweep); });
  report(10, "buffer trend", [&] { return c10(sweep); });
  report(11, "reputation convergence", c11);
  report(12, "threshold sweep", c12);
  return failures == 0 ? 0 : 1;
}
