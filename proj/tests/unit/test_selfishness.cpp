#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fsf/selfishness.hpp"
#include "support/oracles.hpp"

using namespace fsf;

namespace {

ReputationTable table_of(std::initializer_list<std::pair<NodeId, double>> entries, double initial = 5.0) {
  ReputationTable t(0, initial);
  for (auto [id, v] : entries) t.set(id, v);
  return t;
}

}  // namespace

TEST_CASE("cooperation sigmoid worked values") {
  CHECK(std::abs(cooperation_probability(10, 4, 5) - 0.94) <= 0.01);
  CHECK(std::abs(cooperation_probability(8, 7, 5) - 0.61) <= 0.01);
  CHECK(cooperation_probability(6, 6, 5) == 0.5);
  CHECK(cooperation_probability(10, 4, 5) == doctest::Approx(oracle::sigmoid(10, 4, 5)));
  CHECK_THROWS_AS(cooperation_probability(1, 2, 0), ReputationError);
}

TEST_CASE("sigmoid is antisymmetric and monotone") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> r(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double u = r(rng), v = r(rng);
    CHECK(cooperation_probability(u, v, 5) + cooperation_probability(v, u, 5) == doctest::Approx(1.0));
    CHECK(cooperation_probability(u + 1.0, v, 5) >= cooperation_probability(u, v, 5));
    const double p = cooperation_probability(u, v, 5);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("average reputation excludes the subject") {
  CHECK(average_reputation(table_of({{1, 8}, {2, 2}, {3, 4}, {4, 6}}), 1) == 4.0);
  CHECK(average_reputation(table_of({{1, 8}, {2, 7}}), 1) == 7.0);
  CHECK(average_reputation(table_of({{1, 3}, {2, 3}, {3, 3}}), 9) == 3.0);
  CHECK_THROWS_AS(average_reputation(table_of({{1, 8}}), 1), ReputationError);
}

TEST_CASE("reputation table basics") {
  ReputationTable t(3, 5.0);
  CHECK(t.ensure(1).value == 5.0);
  CHECK(t.contains(1));
  CHECK_FALSE(t.contains(2));
  CHECK_THROWS_AS(t.ensure(3), ReputationError);
  CHECK_THROWS_AS(t.at(2), ReputationError);
  t.set(2, 7.0);
  CHECK(t.value(2) == 7.0);
  CHECK(t.size() == 2);
  CHECK(t.total_observations() == 0);
}

TEST_CASE("update by direct substitution") {
  auto t = table_of({{1, 5}, {2, 5}});
  const auto u = update_reputation(t, 1, 0, {});
  CHECK(u.baseline == 5.0);
  CHECK(u.probability == 0.5);
  CHECK(t.value(1) == 4.5);
  CHECK(t.at(1).observations == 1);
  CHECK(t.value(2) == 5.0);
}

TEST_CASE("cooperation at certainty leaves R unchanged") {
  // Baseline far above v drives probCoop toward 1 (to double precision).
  auto t = table_of({{1, 0.0}, {2, 1e4}});
  update_reputation(t, 1, 1, {});
  CHECK(t.value(1) == doctest::Approx(0.0));
}

TEST_CASE("fifty selfish observations strictly decrease R") {
  auto t = table_of({{1, 5}, {2, 6}, {3, 4}});
  ReputationParams params;
  double expected = 5.0;
  double previous = t.value(1);
  for (int i = 0; i < 50; ++i) {
    // Independent recurrence: baseline stays the mean of the other entries.
    expected += params.delta * (0.0 - oracle::sigmoid(5.0, expected, params.f_d));
    update_reputation(t, 1, 0, params);
    CHECK(t.value(1) < previous);
    CHECK(t.value(1) == doctest::Approx(expected));
    previous = t.value(1);
  }
  CHECK(t.value(2) == 6.0);
  CHECK(t.value(3) == 4.0);
}

TEST_CASE("update moves R toward the observation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> r(-10.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    auto t = table_of({{1, r(rng)}, {2, r(rng)}, {3, r(rng)}});
    const int d = i % 2;
    const double before = t.value(1);
    update_reputation(t, 1, d, {});
    if (d == 1) CHECK(t.value(1) > before);
    if (d == 0) CHECK(t.value(1) < before);
  }
}

TEST_CASE("neighbor update modes") {
  ReputationParams params;
  params.neighbor_update = NeighborUpdate::off;
  auto off = table_of({{1, 5}, {2, 5}});
  update_reputation(off, 1, 0, params);
  CHECK(off.value(2) == 5.0);

  params.neighbor_update = NeighborUpdate::on_selfish;
  auto sel = table_of({{1, 5}, {2, 5}});
  update_reputation(sel, 1, 0, params);
  // R_2 += 1 - probCoop(5, 5) with the pre-update R_1.
  CHECK(sel.value(2) == doctest::Approx(5.5));
  auto sel_coop = table_of({{1, 5}, {2, 5}});
  update_reputation(sel_coop, 1, 1, params);
  CHECK(sel_coop.value(2) == 5.0);

  params.neighbor_update = NeighborUpdate::on_cooperative;
  auto coop = table_of({{1, 5}, {2, 5}});
  update_reputation(coop, 1, 1, params);
  CHECK(coop.value(2) == doctest::Approx(5.5));
  CHECK(parse_neighbor_update("off") == NeighborUpdate::off);
  CHECK(std::string(to_string(NeighborUpdate::on_selfish)) == "on_selfish");
  CHECK_THROWS_AS(parse_neighbor_update("sometimes"), ReputationError);
}

TEST_CASE("update argument errors") {
  auto t = table_of({{1, 5}});
  CHECK_THROWS_AS(update_reputation(t, 2, 0, {}), ReputationError);
  CHECK_THROWS_AS(update_reputation(t, 1, 2, {}), ReputationError);
  ReputationParams bad;
  bad.delta = 0.0;
  CHECK_THROWS_AS(update_reputation(t, 1, 0, bad), ReputationError);
  // A lone entry is compared against the initial reputation.
  const auto u = update_reputation(t, 1, 0, {});
  CHECK(u.baseline == 5.0);
}

TEST_CASE("perfect detector") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(observe_contact(true, {}, rng) == 0);
    CHECK(observe_contact(false, {}, rng) == 1);
  }
}

TEST_CASE("false positive rate is realized") {
  std::mt19937_64 rng(12345);
  const DetectionErrors errors{0.05, 0.0};
  int flips = 0;
  const int n = 10'000;
  for (int i = 0; i < n; ++i) flips += observe_contact(false, errors, rng) == 0;
  CHECK(std::abs(flips / double(n) - 0.05) <= 0.01);

  std::mt19937_64 rng2(99);
  const DetectionErrors misses{0.0, 0.10};
  int missed = 0;
  for (int i = 0; i < n; ++i) missed += observe_contact(true, misses, rng2) == 1;
  CHECK(std::abs(missed / double(n) - 0.10) <= 0.01);
}

TEST_CASE("detector error validation") {
  CHECK_NOTHROW(DetectionErrors{0.05, 0.05}.check());
  CHECK_THROWS_AS((DetectionErrors{1.0, 0.0}.check()), ReputationError);
  CHECK_THROWS_AS((DetectionErrors{0.0, -0.1}.check()), ReputationError);
}

TEST_CASE("merge averages shared entries") {
  auto mine = table_of({{1, 4}, {2, 8}, {5, 1}});
  ReputationTable theirs(5, 5.0);
  theirs.set(1, 6);
  theirs.set(0, 2);
  merge_tables(mine, theirs);
  CHECK(mine.value(1) == 5.0);
  CHECK(mine.value(2) == 8.0);
  CHECK(mine.value(5) == 1.0);
  CHECK_FALSE(mine.contains(0));
}

TEST_CASE("maturity on separated clusters") {
  const std::vector<double> v = {1, 1, 1, 9, 9, 9};
  MaturityParams p;
  p.separation = 1.0;
  p.min_observations = 6;
  CHECK(maturity_check(v, p) == Maturity::mature);
  p.min_observations = 7;
  CHECK(maturity_check(v, p) == Maturity::learning);
  const auto c = two_means(v);
  CHECK(c.low == 1.0);
  CHECK(c.high == 9.0);
  CHECK(c.in_high == std::vector<bool>{false, false, false, true, true, true});
}

TEST_CASE("equal values stay learning") {
  const std::vector<double> v(10, 3.0);
  MaturityParams p;
  p.min_observations = 0;
  CHECK(maturity_check(v, p) == Maturity::learning);
  CHECK(maturity_check(std::vector<double>{4.0}, p) == Maturity::learning);
  CHECK(maturity_check(std::vector<double>{}, p) == Maturity::learning);
}

TEST_CASE("two Gaussians three sigma apart mature and split exactly like the oracle") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> low(0.0, 1.0), high(3.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> v;
    for (int i = 0; i < 50; ++i) v.push_back(low(rng));
    for (int i = 0; i < 50; ++i) v.push_back(high(rng));
    MaturityParams p;
    p.min_observations = 100;
    CHECK(maturity_check(v, p) == Maturity::mature);
    const auto ours = two_means(v).in_high;
    const auto best = oracle::best_split(v);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < v.size(); ++i) agree += ours[i] == best[i];
    CHECK(agree == v.size());
  }
}

TEST_CASE("unimodal noise stays learning") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v;
  for (int i = 0; i < 200; ++i) v.push_back(u(rng));
  MaturityParams p;
  p.min_observations = 0;
  p.separation = 2.0;
  CHECK(maturity_check(v, p) == Maturity::learning);
}

TEST_CASE("classify_observed clusters the per-observation drift") {
  ReputationTable t(0, 5.0);
  // Cooperative peers drift up at different speeds with different counts; the
  // selfish ones drift down.
  auto set = [&](NodeId id, double value, std::uint64_t n) {
    auto& e = t.ensure(id);
    e.value = value;
    e.observations = n;
  };
  set(1, 5.0 + 0.4 * 40, 40);
  set(2, 5.0 + 0.4 * 5, 5);
  set(3, 5.0 + 0.5 * 20, 20);
  set(4, 5.0 - 0.6 * 10, 10);
  set(5, 5.0 - 0.5 * 4, 4);
  set(6, 5.0, 0);
  MaturityParams p;
  p.min_observations = 50;
  const auto v = classify_observed(t, p);
  CHECK(v.observed == std::vector<NodeId>{1, 2, 3, 4, 5});
  CHECK(v.judged_selfish == std::vector<bool>{false, false, false, true, true});
  CHECK(v.maturity == Maturity::mature);
  CHECK(v.features[0] == doctest::Approx(0.4));

  p.feature = ClusterFeature::reputation;
  const auto raw = classify_observed(t, p);
  CHECK(raw.features[0] == doctest::Approx(21.0));
  CHECK(parse_cluster_feature("per_observation") == ClusterFeature::per_observation);
  CHECK_THROWS_AS(parse_cluster_feature("both"), ReputationError);
}

TEST_CASE("selfishness estimate") {
  auto t = table_of({{1, 0}, {2, 10}, {3, 10}});
  const double s = selfishness_estimate(t, 1, EstimateMode::sigmoid, 5);
  CHECK(s == doctest::Approx(oracle::sigmoid(10, 0, 5)));
  CHECK(selfishness_estimate(t, 2, EstimateMode::sigmoid, 5) == doctest::Approx(oracle::sigmoid(5, 10, 5)));
  CHECK(selfishness_estimate(t, 1, EstimateMode::rank, 5) == 1.0);
  CHECK(selfishness_estimate(t, 2, EstimateMode::rank, 5) == doctest::Approx(0.25));
  // Unknown relay: compared at the initial reputation.
  CHECK(selfishness_estimate(table_of({{2, 5}}), 9, EstimateMode::sigmoid, 5) == 0.5);
  CHECK(selfishness_estimate(ReputationTable(0, 5.0), 9, EstimateMode::rank, 5) == 0.5);
  CHECK(parse_estimate_mode("rank") == EstimateMode::rank);
  CHECK_THROWS_AS(parse_estimate_mode("median"), ReputationError);
}

TEST_CASE("relay behavior by class") {
  RelayProfile r;
  r.community = 2;
  CHECK(relay_behavior(r, 1) == Verdict::accept);
  r.ground_truth = SelfishClass::individually_selfish;
  CHECK(relay_behavior(r, 2) == Verdict::refused_individual);
  r.ground_truth = SelfishClass::socially_selfish;
  CHECK(relay_behavior(r, 2) == Verdict::accept);
  CHECK(relay_behavior(r, 1) == Verdict::refused_social);
}

TEST_CASE("selfishness assessment examples") {
  AssessmentParams params;
  RelayProfile relay;
  relay.id = 1;

  // Estimate 0.8 > 0.7: the peer average sits f_d*log10(4) above R_1.
  auto reputed = table_of({{1, 5.0 - 5.0 * std::log10(4.0)}, {2, 5.0}});
  CHECK(selfishness_estimate(reputed, 1, EstimateMode::sigmoid, 5) == doctest::Approx(0.8));
  CHECK(selfishness_assessment(reputed, relay, 0, params) == Verdict::reputed_selfish);

  const auto neutral = table_of({{1, 5}, {2, 5}});
  relay.energy_fraction = 0.5;
  relay.memory_used_fraction = 0.75;
  CHECK(selfishness_assessment(neutral, relay, 0, params) == Verdict::refused_resources);

  relay.energy_fraction = 1.0;
  relay.memory_used_fraction = 0.0;
  relay.ground_truth = SelfishClass::socially_selfish;
  relay.community = 3;
  CHECK(selfishness_assessment(neutral, relay, 3, params) == Verdict::accept);
  CHECK(selfishness_assessment(neutral, relay, 1, params) == Verdict::refused_social);
  relay.ground_truth = SelfishClass::individually_selfish;
  CHECK(selfishness_assessment(neutral, relay, 3, params) == Verdict::refused_individual);
  CHECK(std::string(to_string(Verdict::refused_resources)) == "resources");
}

TEST_CASE("reputation snapshot format") {
  auto t = table_of({{1, 4.5}});
  t.ensure(1).observations = 2;
  std::ostringstream out;
  write_reputation_csv_header(out);
  write_reputation_snapshot(t, 10, out);
  CHECK(out.str() == "time,observer,subject,reputation,observations\n10,0,1,4.5,2\n");
}
