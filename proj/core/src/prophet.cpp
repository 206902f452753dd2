#include "fsf/prophet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsf {

void ProphetParams::check() const {
  auto unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!unit(p_init) || !unit(gamma) || !unit(beta)) throw std::invalid_argument("PRoPHET parameters must lie in (0, 1]");
  if (!(time_unit > 0.0)) throw std::invalid_argument("PRoPHET time unit must be positive");
}

void DeliveryPredictabilityTable::age(SimTime now, const ProphetParams& params) {
  if (now <= last_aging_) return;
  const double factor = std::pow(params.gamma, (now - last_aging_) / params.time_unit);
  for (auto& p : p_) p *= factor;
  last_aging_ = now;
}

void prophet_update(DeliveryPredictabilityTable& a, DeliveryPredictabilityTable& b, SimTime now,
                    const ProphetParams& params) {
  a.age(now, params);
  b.age(now, params);

  auto direct = [&](DeliveryPredictabilityTable& t, NodeId peer) {
    const double old = t.get(peer);
    t.set(peer, old + (1.0 - old) * params.p_init);
  };
  direct(a, b.owner());
  direct(b, a.owner());

  const auto snap_a = a.values();
  const auto snap_b = b.values();
  auto transitive = [&](DeliveryPredictabilityTable& t, const std::vector<double>& other, NodeId peer) {
    const double p_peer = t.get(peer);
    for (NodeId c = 0; c < other.size(); ++c) {
      if (c == t.owner() || c == peer) continue;
      const double via = p_peer * other[c] * params.beta;
      if (via > t.get(c)) t.set(c, std::min(1.0, via));
    }
  };
  transitive(a, snap_b, b.owner());
  transitive(b, snap_a, a.owner());
}

}  // namespace fsf
