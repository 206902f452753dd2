#include "fsf/node.hpp"

namespace fsf {

NodeState::NodeState(NodeId node_id, std::uint32_t node_count, Bytes capacity, double initial_reputation,
                     double energy_capacity)
    : id(node_id),
      buffer(capacity),
      energy{RadioMode::inactive, energy_capacity},
      contact_stats(node_count),
      reputation(node_id, initial_reputation),
      prophet(node_id, node_count) {}

RelayProfile NodeState::profile(const EnergyConfig& energy_config) const {
  return {id, ground_truth, community, energy.fraction(energy_config), memory_used_fraction()};
}

Friendship local_friendship(const NodeState& node, NodeId peer, const NBModel& model,
                            const DiscretizationConfig& thresholds) {
  return classify_friendship(model, discretize_features(node.stats_with(peer).observation(), thresholds));
}

ResourceStatus resource_gate(const NodeState& node, const ResourceThresholds& thresholds,
                             const EnergyConfig& energy_config) {
  return resource_gate(node.energy.fraction(energy_config), node.memory_used_fraction(), thresholds);
}

}  // namespace fsf
