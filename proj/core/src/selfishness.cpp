#include "fsf/selfishness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

namespace fsf {

const char* to_string(SelfishClass c) {
  switch (c) {
    case SelfishClass::not_selfish: return "not_selfish";
    case SelfishClass::individually_selfish: return "individually_selfish";
    case SelfishClass::socially_selfish: return "socially_selfish";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reputed_selfish: return "reputed_selfish";
    case Verdict::refused_individual: return "selfish_individual";
    case Verdict::refused_social: return "selfish_social";
    case Verdict::refused_resources: return "resources";
  }
  return "?";
}

const char* to_string(NeighborUpdate mode) {
  switch (mode) {
    case NeighborUpdate::on_selfish: return "on_selfish";
    case NeighborUpdate::on_cooperative: return "on_cooperative";
    case NeighborUpdate::off: return "off";
  }
  return "?";
}

NeighborUpdate parse_neighbor_update(std::string_view text) {
  if (text == "on_selfish") return NeighborUpdate::on_selfish;
  if (text == "on_cooperative") return NeighborUpdate::on_cooperative;
  if (text == "off") return NeighborUpdate::off;
  throw ReputationError("unknown neighbor update '" + std::string(text) + "'");
}

const char* to_string(EstimateMode mode) { return mode == EstimateMode::sigmoid ? "sigmoid" : "rank"; }

EstimateMode parse_estimate_mode(std::string_view text) {
  if (text == "sigmoid") return EstimateMode::sigmoid;
  if (text == "rank") return EstimateMode::rank;
  throw ReputationError("unknown estimate mode '" + std::string(text) + "'");
}

double cooperation_probability(double r_u, double r_v, double f_d) {
  if (!(f_d > 0.0)) throw ReputationError("significance factor f_d must be positive");
  return 1.0 / (1.0 + std::pow(10.0, (r_v - r_u) / f_d));
}

ReputationTable::Entry& ReputationTable::ensure(NodeId id) {
  if (id == owner_) throw ReputationError("a reputation table never rates its owner");
  return entries_.try_emplace(id, Entry{initial_, 0}).first->second;
}

const ReputationTable::Entry& ReputationTable::at(NodeId id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw ReputationError("node " + std::to_string(id) + " not in reputation table");
  return it->second;
}

void ReputationTable::set(NodeId id, double value) { ensure(id).value = value; }

std::uint64_t ReputationTable::total_observations() const {
  std::uint64_t n = 0;
  for (const auto& [_, e] : entries_) n += e.observations;
  return n;
}

double average_reputation(const ReputationTable& table, NodeId exclude) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [id, e] : table.entries()) {
    if (id == exclude) continue;
    sum += e.value;
    ++n;
  }
  if (n == 0) throw ReputationError("no reputation entries besides the excluded node");
  return sum / static_cast<double>(n);
}

ReputationUpdate update_reputation(ReputationTable& table, NodeId v, int detected_cooperative,
                                   const ReputationParams& params) {
  if (!table.contains(v)) throw ReputationError("node " + std::to_string(v) + " not in reputation table");
  if (detected_cooperative != 0 && detected_cooperative != 1) throw ReputationError("detection must be 0 or 1");
  if (!(params.delta > 0.0)) throw ReputationError("learning weight delta must be positive");

  ReputationUpdate out;
  out.baseline = table.size() > 1 ? average_reputation(table, v) : table.initial();
  auto& entry = table.entries().at(v);
  out.before = entry.value;
  out.probability = cooperation_probability(out.baseline, entry.value, params.f_d);
  entry.value += params.delta * (detected_cooperative - out.probability);
  ++entry.observations;
  out.after = entry.value;

  const bool neighbors = (params.neighbor_update == NeighborUpdate::on_selfish && detected_cooperative == 0) ||
                         (params.neighbor_update == NeighborUpdate::on_cooperative && detected_cooperative == 1);
  if (neighbors) {
    for (auto& [id, e] : table.entries()) {
      if (id == v) continue;
      e.value += params.delta * (1.0 - cooperation_probability(e.value, out.before, params.f_d));
    }
  }
  return out;
}

void DetectionErrors::check() const {
  if (!(false_positive >= 0.0 && false_positive < 1.0) || !(false_negative >= 0.0 && false_negative < 1.0)) {
    throw ReputationError("detection error rates must lie in [0, 1)");
  }
}

int observe_contact(bool refusal_observed, const DetectionErrors& errors, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (refusal_observed) return u < errors.false_negative ? 1 : 0;
  return u < errors.false_positive ? 0 : 1;
}

void merge_tables(ReputationTable& table, const ReputationTable& other) {
  for (auto& [id, e] : table.entries()) {
    if (id == other.owner()) continue;
    auto it = other.entries().find(id);
    if (it == other.entries().end()) continue;
    e.value = 0.5 * (e.value + it->second.value);
  }
}

TwoMeans two_means(std::span<const double> values) {
  TwoMeans out;
  out.in_high.assign(values.size(), false);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.low = *lo;
  out.high = *hi;
  if (out.low == out.high) return out;

  // In one dimension the optimal clusters are contiguous in sorted order, so
  // scanning every cut with prefix sums finds the exact minimum.
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> sum(values.size() + 1, 0.0), sq(values.size() + 1, 0.0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    sum[i + 1] = sum[i] + values[order[i]];
    sq[i + 1] = sq[i] + values[order[i]] * values[order[i]];
  }
  auto sse = [&](std::size_t from, std::size_t to) {
    const double n = static_cast<double>(to - from);
    const double s = sum[to] - sum[from];
    return std::max(0.0, (sq[to] - sq[from]) - s * s / n);
  };
  const std::size_t n = values.size();
  std::size_t best_cut = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t cut = 1; cut < n; ++cut) {
    if (values[order[cut]] == values[order[cut - 1]]) continue;  // never split equal values
    const double cost = sse(0, cut) + sse(cut, n);
    if (cost < best) {
      best = cost;
      best_cut = cut;
    }
  }
  out.low = (sum[best_cut] - sum[0]) / static_cast<double>(best_cut);
  out.high = (sum[n] - sum[best_cut]) / static_cast<double>(n - best_cut);
  for (std::size_t i = best_cut; i < n; ++i) out.in_high[order[i]] = true;
  return out;
}

Maturity maturity_check(std::span<const double> values, std::uint64_t observations, const MaturityParams& params) {
  if (values.size() < 2 || observations < params.min_observations) return Maturity::learning;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(values.size()));
  if (sd == 0.0) return Maturity::learning;
  const auto clusters = two_means(values);
  return (clusters.high - clusters.low) >= params.separation * sd ? Maturity::mature : Maturity::learning;
}

const char* to_string(ClusterFeature feature) {
  return feature == ClusterFeature::reputation ? "reputation" : "per_observation";
}

ClusterFeature parse_cluster_feature(std::string_view text) {
  if (text == "reputation") return ClusterFeature::reputation;
  if (text == "per_observation") return ClusterFeature::per_observation;
  throw ReputationError("unknown cluster feature '" + std::string(text) + "'");
}

SelfishVerdict classify_observed(const ReputationTable& table, const MaturityParams& params) {
  SelfishVerdict out;
  for (const auto& [id, e] : table.entries()) {
    if (e.observations == 0) continue;
    out.observed.push_back(id);
    out.features.push_back(params.feature == ClusterFeature::reputation
                               ? e.value
                               : (e.value - table.initial()) / static_cast<double>(e.observations));
  }
  out.maturity = maturity_check(out.features, table.total_observations(), params);
  const auto clusters = two_means(out.features);
  out.judged_selfish.resize(out.features.size());
  for (std::size_t i = 0; i < out.features.size(); ++i) out.judged_selfish[i] = !clusters.in_high[i];
  return out;
}

double selfishness_estimate(const ReputationTable& table, NodeId v, EstimateMode mode, double f_d) {
  const double r_v = table.contains(v) ? table.value(v) : table.initial();
  const std::size_t others = table.size() - (table.contains(v) ? 1 : 0);
  if (mode == EstimateMode::sigmoid) {
    const double baseline = others > 0 ? average_reputation(table, v) : table.initial();
    return cooperation_probability(baseline, r_v, f_d);
  }
  if (others == 0) return 0.5;
  double below = 0.0;
  for (const auto& [id, e] : table.entries()) {
    if (id == v) continue;
    if (e.value < r_v) {
      below += 1.0;
    } else if (e.value == r_v) {
      below += 0.5;
    }
  }
  return 1.0 - below / static_cast<double>(others);
}

Verdict relay_behavior(const RelayProfile& relay, CommunityId destination_community) {
  switch (relay.ground_truth) {
    case SelfishClass::individually_selfish: return Verdict::refused_individual;
    case SelfishClass::socially_selfish:
      return relay.community == destination_community ? Verdict::accept : Verdict::refused_social;
    case SelfishClass::not_selfish: return Verdict::accept;
  }
  return Verdict::accept;
}

Verdict selfishness_assessment(const ReputationTable& decider_table, const RelayProfile& relay,
                               CommunityId destination_community, const AssessmentParams& params) {
  if (selfishness_estimate(decider_table, relay.id, params.estimate, params.f_d) > params.theta) {
    return Verdict::reputed_selfish;
  }
  if (const auto behavior = relay_behavior(relay, destination_community); behavior != Verdict::accept) {
    return behavior;
  }
  if (resource_gate(relay.energy_fraction, relay.memory_used_fraction, params.resources) ==
      ResourceStatus::constrained) {
    return Verdict::refused_resources;
  }
  return Verdict::accept;
}

void write_reputation_csv_header(std::ostream& out) { out << "time,observer,subject,reputation,observations\n"; }

void write_reputation_snapshot(const ReputationTable& table, SimTime time, std::ostream& out) {
  for (const auto& [id, e] : table.entries()) {
    out << time << ',' << table.owner() << ',' << id << ',' << e.value << ',' << e.observations << '\n';
  }
}

}  // namespace fsf
