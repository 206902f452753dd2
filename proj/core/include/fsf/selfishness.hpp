#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <stdexcept>
#include <vector>

#include "fsf/energy.hpp"
#include "fsf/types.hpp"

namespace fsf {

enum class SelfishClass : std::uint8_t { not_selfish, individually_selfish, socially_selfish };

const char* to_string(SelfishClass c);

class ReputationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Probability that a node with reputation r_u is more cooperative than one
/// with r_v: 1 / (1 + 10^((r_v - r_u) / f_d)).
double cooperation_probability(double r_u, double r_v, double f_d);

/// Which observations also move the other entries of the table.
enum class NeighborUpdate : std::uint8_t { on_selfish, on_cooperative, off };

const char* to_string(NeighborUpdate mode);
NeighborUpdate parse_neighbor_update(std::string_view text);

struct ReputationParams {
  double initial = 5.0;
  double delta = 1.0;
  double f_d = 5.0;
  NeighborUpdate neighbor_update = NeighborUpdate::off;
};

/// One node's (ID, R) table. Entries appear on first contact.
class ReputationTable {
 public:
  struct Entry {
    double value = 0.0;
    std::uint64_t observations = 0;
  };

  ReputationTable() = default;
  ReputationTable(NodeId owner, double initial) : owner_(owner), initial_(initial) {}

  NodeId owner() const { return owner_; }
  double initial() const { return initial_; }

  bool contains(NodeId id) const { return entries_.contains(id); }
  /// Inserts `id` at the initial reputation if absent.
  Entry& ensure(NodeId id);
  const Entry& at(NodeId id) const;
  double value(NodeId id) const { return at(id).value; }
  void set(NodeId id, double value);

  const std::map<NodeId, Entry>& entries() const { return entries_; }
  std::map<NodeId, Entry>& entries() { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::uint64_t total_observations() const;

 private:
  NodeId owner_ = 0;
  double initial_ = 5.0;
  std::map<NodeId, Entry> entries_;
};

/// Arithmetic mean of all entries except `exclude`.
double average_reputation(const ReputationTable& table, NodeId exclude);

struct ReputationUpdate {
  double baseline = 0.0;     // peer average R_y
  double probability = 0.0;  // probCoop(y, v)
  double before = 0.0;
  double after = 0.0;
};

/// R_v += delta * (D - probCoop(y, v)) with y the peer average, then the
/// neighbor update R_k += delta * (1 - probCoop(k, v)) for every k != v when
/// params.neighbor_update selects this observation.
ReputationUpdate update_reputation(ReputationTable& table, NodeId v, int detected_cooperative,
                                   const ReputationParams& params);

struct DetectionErrors {
  double false_positive = 0.0;  // cooperative act reported selfish
  double false_negative = 0.0;  // selfish act missed

  void check() const;
};

/// D = 0 for an observed selfish refusal, 1 otherwise, flipped by the
/// detector's error rates. Draws exactly one uniform from `rng`.
int observe_contact(bool refusal_observed, const DetectionErrors& errors, std::mt19937_64& rng);

/// Merges `other` into `table` as the element-wise mean of shared entries.
void merge_tables(ReputationTable& table, const ReputationTable& other);

// ---------------------------------------------------------------------------
// Maturity

struct TwoMeans {
  double low = 0.0;
  double high = 0.0;
  std::vector<bool> in_high;  // per input value
};

/// Exact two-cluster split of 1-D values (minimum within-cluster sum of squares).
TwoMeans two_means(std::span<const double> values);

enum class Maturity : std::uint8_t { learning, mature };

/// What classify_observed clusters on. Raw reputations drift apart with the
/// number of cooperative observations, so frequently met cooperative peers
/// outrun rarely met ones; the per-observation drift (R - initial) / n removes
/// that spread.
enum class ClusterFeature : std::uint8_t { reputation, per_observation };

const char* to_string(ClusterFeature feature);
ClusterFeature parse_cluster_feature(std::string_view text);

struct MaturityParams {
  std::uint64_t min_observations = 30;
  double separation = 1.5;  // in units of the overall standard deviation
  ClusterFeature feature = ClusterFeature::per_observation;
};

Maturity maturity_check(std::span<const double> values, std::uint64_t observations, const MaturityParams& params);
inline Maturity maturity_check(std::span<const double> values, const MaturityParams& params) {
  return maturity_check(values, values.size(), params);
}

/// Low-cluster members of the observed entries, as judged from `table`.
struct SelfishVerdict {
  Maturity maturity = Maturity::learning;
  std::vector<NodeId> observed;
  std::vector<double> features;      // parallel to observed
  std::vector<bool> judged_selfish;  // parallel to observed
};
SelfishVerdict classify_observed(const ReputationTable& table, const MaturityParams& params);

// ---------------------------------------------------------------------------
// Relay acceptance

enum class EstimateMode : std::uint8_t {
  sigmoid,  // probCoop(peer average, v)
  rank,     // 1 - mid-rank of R_v among the table's entries
};

const char* to_string(EstimateMode mode);
EstimateMode parse_estimate_mode(std::string_view text);

/// Normalized selfishness estimate in [0, 1]; higher means more selfish.
double selfishness_estimate(const ReputationTable& table, NodeId v, EstimateMode mode, double f_d);

struct RelayProfile {
  NodeId id = 0;
  SelfishClass ground_truth = SelfishClass::not_selfish;
  CommunityId community = 0;
  double energy_fraction = 1.0;
  double memory_used_fraction = 0.0;
};

enum class Verdict : std::uint8_t {
  accept,
  reputed_selfish,
  refused_individual,
  refused_social,
  refused_resources,
};

const char* to_string(Verdict v);

/// The relay's own disposition toward a message for `destination_community`.
Verdict relay_behavior(const RelayProfile& relay, CommunityId destination_community);

struct AssessmentParams {
  double theta = 0.7;
  EstimateMode estimate = EstimateMode::sigmoid;
  double f_d = 5.0;
  ResourceThresholds resources;
};

/// The decider's reputation gate, then the relay's behavioral gate, then the
/// relay's resource gate.
Verdict selfishness_assessment(const ReputationTable& decider_table, const RelayProfile& relay,
                               CommunityId destination_community, const AssessmentParams& params);

void write_reputation_csv_header(std::ostream& out);
void write_reputation_snapshot(const ReputationTable& table, SimTime time, std::ostream& out);

}  // namespace fsf
