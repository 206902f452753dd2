#include <doctest.h>

#include <algorithm>

#include "fsf/metrics.hpp"

using namespace fsf;

namespace {

void add(EventLog& log, SimTime t, RecordType type, MessageId id, NodeId from = 0, NodeId to = 1) {
  log.append({t, type, id, from, to, Reason::none});
}

}  // namespace

TEST_CASE("metrics by direct arithmetic") {
  EventLog log;
  for (MessageId id = 1; id <= 10; ++id) add(log, 0.0, RecordType::created, id);
  const SimTime delays[] = {100, 300, 200, 400};
  std::vector<std::pair<SimTime, MessageId>> deliveries;
  for (MessageId id = 1; id <= 4; ++id) deliveries.push_back({delays[id - 1], id});
  std::sort(deliveries.begin(), deliveries.end());
  int forwards = 0;
  for (const auto& [t, id] : deliveries) {
    for (int k = 0; k < 5; ++k, ++forwards) add(log, t, RecordType::forwarded, id);
    add(log, t, RecordType::delivered, id);
  }
  log.finish(1000.0);
  REQUIRE(forwards == 20);
  const auto m = compute_metrics(log);
  CHECK(m.created == 10);
  CHECK(m.delivered == 4);
  CHECK(m.forwards == 20);
  CHECK(m.delivery_ratio == doctest::Approx(0.4));
  CHECK(*m.average_delay == doctest::Approx(250.0));
  CHECK(*m.average_cost == doctest::Approx(5.0));
  CHECK(m.efficiency == doctest::Approx(0.08));
  CHECK(m.max_delay == 400.0);
}

TEST_CASE("zero deliveries") {
  EventLog log;
  add(log, 0.0, RecordType::created, 1);
  add(log, 5.0, RecordType::forwarded, 1, 0, 2);
  log.finish(10.0);
  const auto m = compute_metrics(log);
  CHECK(m.delivery_ratio == 0.0);
  CHECK(m.efficiency == 0.0);
  CHECK_FALSE(m.average_delay.has_value());
  CHECK_FALSE(m.average_cost.has_value());
}

TEST_CASE("empty log") {
  EventLog log;
  log.finish(0.0);
  const auto m = compute_metrics(log);
  CHECK(m.created == 0);
  CHECK(m.delivery_ratio == 0.0);
}

TEST_CASE("single direct delivery costs one forward") {
  EventLog log;
  add(log, 0.0, RecordType::created, 1);
  add(log, 4.0, RecordType::forwarded, 1);
  add(log, 4.0, RecordType::delivered, 1);
  log.finish(10.0);
  const auto m = compute_metrics(log);
  CHECK(*m.average_cost == 1.0);
  CHECK(m.delivery_ratio == 1.0);
  CHECK(m.efficiency == 1.0);
}

TEST_CASE("only the first delivery of a message counts") {
  EventLog log;
  add(log, 0.0, RecordType::created, 1);
  add(log, 4.0, RecordType::delivered, 1);
  add(log, 9.0, RecordType::delivered, 1);
  log.finish(10.0);
  const auto m = compute_metrics(log);
  CHECK(m.delivered == 1);
  CHECK(*m.average_delay == 4.0);
}

TEST_CASE("incomplete or inconsistent logs are rejected") {
  EventLog log;
  add(log, 0.0, RecordType::created, 1);
  CHECK_THROWS_AS(compute_metrics(log), LogError);
  EventLog orphan;
  add(orphan, 1.0, RecordType::delivered, 7);
  orphan.finish(2.0);
  CHECK_THROWS_AS(compute_metrics(orphan), LogError);
}
