#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fsf/energy.hpp"
#include "fsf/event_log.hpp"
#include "fsf/message.hpp"
#include "fsf/node.hpp"
#include "fsf/router.hpp"
#include "fsf/selfishness.hpp"
#include "fsf/trace.hpp"

namespace fsf {

enum class ScanMode : std::uint8_t {
  per_contact,  // each participant pays one scan when a contact comes up
  periodic,     // every node pays one scan per scan_period; a failed scan turns its radio off
};

const char* to_string(ScanMode mode);
ScanMode parse_scan_mode(std::string_view text);

struct ScenarioConfig {
  std::uint32_t node_count = 0;  // 0: take it from the trace
  Bytes buffer_capacity = 40 * kBytesPerMB;
  double link_speed_bps = 250.0 * kBitsPerKbit;
  MessageGenConfig messages;  // interval <= 0 disables generation
  EnergyConfig energy;
  ScanMode scan_mode = ScanMode::per_contact;
  SimTime scan_period = 1.0;

  double individually_selfish_fraction = 0.0;
  double socially_selfish_fraction = 0.0;
  std::vector<CommunityId> community;  // per node; empty puts everyone in community 0

  ReputationParams reputation;
  DetectionErrors detection;
  bool merge_reputation = false;  // cooperative pairs average their tables at contact

  std::optional<BufferPolicy> buffer_policy;  // router default when unset
};

struct SimulationOptions {
  bool check_invariants = false;
  SimTime reputation_snapshot_interval = 0.0;  // 0 disables
};

struct ReputationSnapshot {
  SimTime time = 0.0;
  NodeId observer = 0;
  NodeId subject = 0;
  double reputation = 0.0;
  std::uint64_t observations = 0;
};

/// consumed[node][epoch]: energy spent by a node between consecutive recharges.
struct EnergyLedger {
  std::vector<std::vector<double>> consumed;
};

struct SimulationResult {
  EventLog log;
  std::vector<NodeState> nodes;
  EnergyLedger energy;
  std::vector<ReputationSnapshot> snapshots;
};

class SimulationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

SimulationResult run_simulation(const ContactTrace& trace, const ScenarioConfig& scenario, const RouterConfig& router,
                                std::uint64_t seed, const SimulationOptions& options = {});

/// Ground-truth classes: a seeded shuffle, the first share individually
/// selfish, the next socially selfish.
std::vector<SelfishClass> assign_selfishness(std::uint32_t node_count, double individual_fraction,
                                             double social_fraction, std::uint64_t seed);

struct ExpiredCopy {
  NodeId holder = 0;
  Message message;
};

/// Removes every buffered copy with created_at + ttl < now.
std::vector<ExpiredCopy> expire_messages(std::vector<NodeState>& nodes, SimTime now);

/// Independent generator streams derived from one run seed.
enum class RngStream : std::uint64_t { messages = 1, detection = 2, assignment = 3 };
std::uint64_t derive_seed(std::uint64_t seed, RngStream stream);

}  // namespace fsf
