#include "fsf/metrics.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace fsf {

MetricsRecord compute_metrics(const EventLog& log) {
  if (!log.complete()) throw LogError("event log is truncated");
  MetricsRecord m;
  std::unordered_map<MessageId, SimTime> created;
  std::unordered_set<MessageId> delivered;
  double delay_sum = 0.0;
  for (const auto& r : log.records()) {
    switch (r.type) {
      case RecordType::created: created.emplace(r.msg_id, r.time); break;
      case RecordType::forwarded: ++m.forwards; break;
      case RecordType::delivered: {
        const auto it = created.find(r.msg_id);
        if (it == created.end()) {
          throw LogError("message " + std::to_string(r.msg_id) + " delivered without a created record");
        }
        if (delivered.insert(r.msg_id).second) {
          const double delay = r.time - it->second;
          delay_sum += delay;
          m.max_delay = std::max(m.max_delay, delay);
        }
        break;
      }
      default: break;
    }
  }
  m.created = created.size();
  m.delivered = delivered.size();
  m.delivery_ratio = m.created ? static_cast<double>(m.delivered) / static_cast<double>(m.created) : 0.0;
  if (m.delivered > 0) {
    m.average_delay = delay_sum / static_cast<double>(m.delivered);
    m.average_cost = static_cast<double>(m.forwards) / static_cast<double>(m.delivered);
    m.efficiency = *m.average_cost > 0.0 ? m.delivery_ratio / *m.average_cost : 0.0;
  }
  return m;
}

}  // namespace fsf
