#include "fsf/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace fsf {

bool can_afford(const EnergyState& state, const EnergyConfig& config) { return state.level >= config.cost_per_op; }

EnergyOutcome consume_energy(const EnergyState& state, EnergyOp op, const EnergyConfig& config) {
  EnergyOutcome out{state, false, 0.0};
  if (!can_afford(state, config)) return out;
  switch (op) {
    case EnergyOp::send: out.state.mode = RadioMode::transmission; break;
    case EnergyOp::receive: out.state.mode = RadioMode::reception; break;
    case EnergyOp::scan: out.state.mode = RadioMode::scan; break;
  }
  out.state.level = state.level - config.cost_per_op;
  out.consumed = config.cost_per_op;
  out.completed = true;
  return out;
}

EnergyState recharge(const EnergyState& state, const EnergyConfig& config) {
  EnergyState out = state;
  out.level = config.capacity;
  return out;
}

std::uint64_t recharge_count(SimTime horizon, const EnergyConfig& config) {
  if (config.recharge_period <= 0.0 || horizon <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::floor(horizon / config.recharge_period));
}

void ResourceThresholds::check() const {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("resource thresholds must lie in [0, 1]");
  }
}

ResourceStatus resource_gate(double energy_fraction, double memory_used_fraction, const ResourceThresholds& t) {
  return (energy_fraction < t.alpha || memory_used_fraction > t.beta) ? ResourceStatus::constrained
                                                                       : ResourceStatus::ok;
}

}  // namespace fsf
