#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "fsf/energy.hpp"
#include "fsf/friendship.hpp"
#include "fsf/message.hpp"
#include "fsf/prophet.hpp"
#include "fsf/selfishness.hpp"
#include "fsf/types.hpp"

namespace fsf {

/// What a node has seen of one peer.
struct PairStats {
  std::int64_t meetings = 0;
  std::int64_t completed_contacts = 0;
  double contact_seconds = 0.0;
  std::int64_t calls = 0;
  std::int64_t texts = 0;

  PairObservation observation() const {
    return {meetings, completed_contacts ? contact_seconds / static_cast<double>(completed_contacts) : 0.0, calls,
            texts};
  }
};

struct NodeState {
  NodeId id = 0;
  Buffer buffer;
  BufferPolicy policy = BufferPolicy::drop_oldest;
  EnergyState energy;
  SelfishClass ground_truth = SelfishClass::not_selfish;
  CommunityId community = 0;
  std::vector<PairStats> contact_stats;  // indexed by peer id
  ReputationTable reputation;
  DeliveryPredictabilityTable prophet;
  std::unordered_set<MessageId> consumed;  // delivered here

  NodeState() = default;
  NodeState(NodeId id, std::uint32_t node_count, Bytes capacity, double initial_reputation, double energy_capacity);

  double memory_used_fraction() const { return buffer.used_fraction(); }
  bool holds(MessageId id) const { return buffer.contains(id) || consumed.contains(id); }
  const PairStats& stats_with(NodeId peer) const { return contact_stats.at(peer); }
  RelayProfile profile(const EnergyConfig& energy_config) const;
};

/// Friendship between `node` and `peer` from node's own statistics.
Friendship local_friendship(const NodeState& node, NodeId peer, const NBModel& model,
                            const DiscretizationConfig& thresholds);

ResourceStatus resource_gate(const NodeState& node, const ResourceThresholds& thresholds,
                             const EnergyConfig& energy_config = {});

}  // namespace fsf
