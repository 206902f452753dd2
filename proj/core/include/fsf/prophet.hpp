#pragma once

#include <vector>

#include "fsf/types.hpp"

namespace fsf {

/// Defaults are the canonical PRoPHET values; time_unit scales aging.
struct ProphetParams {
  double p_init = 0.75;
  double gamma = 0.98;
  double beta = 0.25;  // transitivity scaling
  SimTime time_unit = 30.0;

  void check() const;
};

class DeliveryPredictabilityTable {
 public:
  DeliveryPredictabilityTable() = default;
  DeliveryPredictabilityTable(NodeId owner, std::uint32_t node_count)
      : owner_(owner), p_(node_count, 0.0) {}

  NodeId owner() const { return owner_; }
  double get(NodeId dest) const { return dest < p_.size() ? p_[dest] : 0.0; }
  void set(NodeId dest, double value) { p_.at(dest) = value; }
  const std::vector<double>& values() const { return p_; }
  SimTime last_aging_time() const { return last_aging_; }

  /// P <- P * gamma^((now - last) / time_unit).
  void age(SimTime now, const ProphetParams& params);

 private:
  NodeId owner_ = 0;
  std::vector<double> p_;
  SimTime last_aging_ = 0.0;
};

/// Contact between the owners of `a` and `b` at `now`: aging, direct update,
/// then transitivity from the other side's post-direct-update snapshot.
void prophet_update(DeliveryPredictabilityTable& a, DeliveryPredictabilityTable& b, SimTime now,
                    const ProphetParams& params);

}  // namespace fsf
