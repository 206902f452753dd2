#pragma once

#include <cstdint>
#include <optional>

#include "fsf/event_log.hpp"

namespace fsf {

/// Delay and cost are absent when nothing was delivered; efficiency is then 0.
struct MetricsRecord {
  std::uint64_t created = 0;
  std::uint64_t delivered = 0;
  std::uint64_t forwards = 0;
  double delivery_ratio = 0.0;
  std::optional<double> average_delay;
  std::optional<double> average_cost;
  double efficiency = 0.0;
  double max_delay = 0.0;
};

/// Throws LogError on an incomplete log or a delivery without a creation.
MetricsRecord compute_metrics(const EventLog& log);

}  // namespace fsf
