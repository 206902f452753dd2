#include <doctest.h>

#include "fsf/energy.hpp"
#include "fsf/node.hpp"

using namespace fsf;

TEST_CASE("one operation costs 25 units") {
  const auto out = consume_energy(EnergyState{RadioMode::inactive, 500.0}, EnergyOp::send);
  CHECK(out.completed);
  CHECK(out.state.level == 475.0);
  CHECK(out.consumed == 25.0);
  CHECK(out.state.mode == RadioMode::transmission);
  CHECK(consume_energy(out.state, EnergyOp::receive).state.mode == RadioMode::reception);
  CHECK(consume_energy(out.state, EnergyOp::scan).state.mode == RadioMode::scan);
}

TEST_CASE("an empty battery refuses and stays empty") {
  for (auto op : {EnergyOp::send, EnergyOp::receive, EnergyOp::scan}) {
    const auto out = consume_energy(EnergyState{RadioMode::inactive, 0.0}, op);
    CHECK_FALSE(out.completed);
    CHECK(out.state.level == 0.0);
    CHECK(out.consumed == 0.0);
  }
  CHECK_FALSE(consume_energy(EnergyState{RadioMode::inactive, 24.0}, EnergyOp::scan).completed);
  CHECK(can_afford(EnergyState{RadioMode::inactive, 25.0}));
}

TEST_CASE("twenty sends drain a full battery") {
  EnergyState s{RadioMode::inactive, 500.0};
  for (int i = 0; i < 20; ++i) {
    auto out = consume_energy(s, EnergyOp::send);
    REQUIRE(out.completed);
    s = out.state;
  }
  CHECK(s.level == 0.0);
  CHECK_FALSE(consume_energy(s, EnergyOp::send).completed);
}

TEST_CASE("recharge restores capacity") {
  const EnergyState low{RadioMode::off, 30.0};
  const auto full = recharge(low);
  CHECK(full.level == 500.0);
  CHECK(full.mode == RadioMode::off);
  CHECK(recharge(full).level == 500.0);
  EnergyConfig small;
  small.capacity = 100.0;
  CHECK(recharge(low, small).level == 100.0);
  CHECK(full.fraction(small) == 5.0);
}

TEST_CASE("recharge schedule lands on multiples of the period") {
  CHECK(recharge_count(86'399.0) == 0);
  CHECK(recharge_count(86'400.0) == 1);
  CHECK(recharge_count(7 * 86'400.0 + 5) == 7);
  EnergyConfig none;
  none.recharge_period = 0.0;
  CHECK(recharge_count(1e9, none) == 0);
}

TEST_CASE("resource gate examples") {
  const ResourceThresholds t{0.30, 0.70};
  CHECK(resource_gate(0.40, 0.50, t) == ResourceStatus::ok);
  CHECK(resource_gate(0.50, 0.75, t) == ResourceStatus::constrained);
  CHECK(resource_gate(0.20, 0.10, t) == ResourceStatus::constrained);
  // Both comparisons are strict.
  CHECK(resource_gate(0.30, 0.70, t) == ResourceStatus::ok);
}

TEST_CASE("degenerate thresholds never constrain") {
  const ResourceThresholds t{0.0, 1.0};
  for (double e = 0.0; e <= 1.0; e += 0.125) {
    for (double m = 0.0; m <= 1.0; m += 0.125) CHECK(resource_gate(e, m, t) == ResourceStatus::ok);
  }
}

TEST_CASE("resource gate is monotone") {
  // More battery or less memory never turns ok into constrained.
  for (double a = 0.0; a <= 1.0; a += 0.1) {
    for (double b = 0.0; b <= 1.0; b += 0.1) {
      const ResourceThresholds t{a, b};
      for (double e = 0.0; e <= 1.0; e += 0.05) {
        for (double m = 0.0; m <= 1.0; m += 0.05) {
          if (resource_gate(e, m, t) != ResourceStatus::ok) continue;
          CHECK(resource_gate(std::min(1.0, e + 0.05), m, t) == ResourceStatus::ok);
          CHECK(resource_gate(e, std::max(0.0, m - 0.05), t) == ResourceStatus::ok);
        }
      }
    }
  }
}

TEST_CASE("threshold validation") {
  CHECK_NOTHROW(ResourceThresholds{0.3, 0.7}.check());
  CHECK_THROWS_AS((ResourceThresholds{-0.1, 0.7}.check()), std::invalid_argument);
  CHECK_THROWS_AS((ResourceThresholds{0.3, 1.5}.check()), std::invalid_argument);
}

TEST_CASE("node resource gate reads battery and buffer") {
  NodeState node(0, 2, 4'000'000, 5.0, 500.0);
  node.energy.level = 250.0;
  Message m;
  m.id = 1;
  m.size = 3'000'000;
  m.ttl = 100;
  node.buffer.push_back(m);
  CHECK(node.memory_used_fraction() == doctest::Approx(0.75));
  CHECK(resource_gate(node, {0.30, 0.70}) == ResourceStatus::constrained);
  CHECK(resource_gate(node, {0.30, 0.80}) == ResourceStatus::ok);
  node.energy.level = 100.0;
  CHECK(resource_gate(node, {0.30, 0.80}) == ResourceStatus::constrained);
}
