#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fsf/prophet.hpp"

using namespace fsf;

TEST_CASE("first contact sets p_init") {
  DeliveryPredictabilityTable a(0, 3), b(1, 3);
  prophet_update(a, b, 0.0, {});
  CHECK(a.get(1) == doctest::Approx(0.75));
  CHECK(b.get(0) == doctest::Approx(0.75));
  CHECK(a.get(2) == 0.0);
}

TEST_CASE("no aging with gamma 1") {
  ProphetParams p;
  p.gamma = 1.0;
  DeliveryPredictabilityTable a(0, 3);
  a.set(2, 0.6);
  a.age(1e6, p);
  CHECK(a.get(2) == 0.6);
}

TEST_CASE("aging follows gamma per time unit") {
  DeliveryPredictabilityTable a(0, 3);
  a.set(2, 0.5);
  a.age(300.0, {});
  CHECK(a.get(2) == doctest::Approx(0.5 * std::pow(0.98, 10.0)));
  CHECK(a.last_aging_time() == 300.0);
  a.age(100.0, {});
  CHECK(a.get(2) == doctest::Approx(0.5 * std::pow(0.98, 10.0)));
}

TEST_CASE("repeated contacts approach 1 from below") {
  DeliveryPredictabilityTable a(0, 2), b(1, 2);
  double previous = 0.0;
  for (int i = 0; i < 20; ++i) {
    prophet_update(a, b, 0.0, {});
    CHECK(a.get(1) > previous);
    CHECK(a.get(1) <= 1.0);
    previous = a.get(1);
  }
  CHECK(previous == doctest::Approx(1.0));
  for (int i = 0; i < 100; ++i) prophet_update(a, b, 0.0, {});
  CHECK(a.get(1) <= 1.0);
}

TEST_CASE("transitivity by hand") {
  // b knows c at 0.8; after meeting, a learns c through b.
  DeliveryPredictabilityTable a(0, 3), b(1, 3);
  b.set(2, 0.8);
  ProphetParams p;
  p.gamma = 1.0;
  prophet_update(a, b, 0.0, p);
  CHECK(a.get(2) == doctest::Approx(0.75 * 0.8 * 0.25));
  CHECK(b.get(2) == doctest::Approx(0.8));
  // Transitivity never lowers an existing value.
  a.set(2, 0.9);
  prophet_update(a, b, 0.0, p);
  CHECK(a.get(2) == doctest::Approx(0.9));
}

TEST_CASE("predictabilities stay within [0, 1]") {
  std::vector<DeliveryPredictabilityTable> t;
  for (NodeId i = 0; i < 6; ++i) t.emplace_back(i, 6);
  double now = 0.0;
  for (int k = 0; k < 500; ++k) {
    const NodeId x = static_cast<NodeId>((k * 7) % 6), y = static_cast<NodeId>((k * 11 + 1) % 6);
    if (x == y) continue;
    now += 17.0;
    prophet_update(t[x], t[y], now, {});
    for (const auto& table : t) {
      for (double v : table.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(ProphetParams{}.check());
  ProphetParams p;
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  p = {};
  p.time_unit = 0.0;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  p = {};
  p.p_init = 1.5;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
}
