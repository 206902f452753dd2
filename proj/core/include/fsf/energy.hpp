#pragma once

#include <cstdint>

#include "fsf/types.hpp"

namespace fsf {

enum class RadioMode : std::uint8_t { off, inactive, scan, transmission, reception };
enum class EnergyOp : std::uint8_t { send, receive, scan };

struct EnergyConfig {
  double capacity = 500.0;
  double cost_per_op = 25.0;
  SimTime recharge_period = kSecondsPerDay;
};

struct EnergyState {
  RadioMode mode = RadioMode::inactive;
  double level = 500.0;

  double fraction(const EnergyConfig& config) const {
    return config.capacity > 0.0 ? level / config.capacity : 0.0;
  }
};

struct EnergyOutcome {
  EnergyState state;
  bool completed = false;
  double consumed = 0.0;
};

/// Charges one operation. A node below the per-op cost cannot complete it and
/// keeps its level.
EnergyOutcome consume_energy(const EnergyState& state, EnergyOp op, const EnergyConfig& config = {});

bool can_afford(const EnergyState& state, const EnergyConfig& config = {});

/// Full recharge; the mode is unchanged.
EnergyState recharge(const EnergyState& state, const EnergyConfig& config = {});

/// Recharge instants in (0, horizon].
std::uint64_t recharge_count(SimTime horizon, const EnergyConfig& config = {});

struct ResourceThresholds {
  double alpha = 0.30;  // minimum battery fraction
  double beta = 0.70;   // maximum memory-used fraction

  void check() const;
};

enum class ResourceStatus : std::uint8_t { ok, constrained };

/// constrained iff battery < alpha or memory use > beta (both strict).
ResourceStatus resource_gate(double energy_fraction, double memory_used_fraction, const ResourceThresholds& thresholds);

}  // namespace fsf
