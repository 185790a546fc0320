// ============================================================================
// test_fusion.cpp
// ============================================================================
#include <vector>

#include "byzfuse/fusion.hpp"
#include "byzfuse/topology.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace byzfuse;

namespace {
std::vector<Bit> votes(int ones, int total) {
  std::vector<Bit> v(total, 0);
  for (int k = 0; k < ones; ++k) v[k] = 1;
  return v;
}

Topology star(int humans) {
  Topology t;
  t.n_sensors = 1;
  t.n_humans = humans;
  t.sensors_of_human.assign(humans, {0});
  t.humans_of_sensor.assign(1, {});
  for (int m = 0; m < humans; ++m) t.humans_of_sensor[0].push_back(m);
  return t;
}
}  // namespace

TEST_CASE("fusion-center vote with ties deciding H1") {
  CHECK(fc_decide(votes(11, 20), 10.0) == 1);
  CHECK(fc_decide(votes(9, 20), 10.0) == 0);
  CHECK(fc_decide(votes(10, 20), 10.0) == 1);
  CHECK_THROWS(fc_decide(std::vector<Bit>{}, 1.0));
}

TEST_CASE("indicator is strict at one") {
  CHECK(indicator(1.0001) == 1);
  CHECK(indicator(1.0) == -1);
  CHECK(indicator(0.2) == -1);
}

TEST_CASE("reputation increments, signed vote") {
  const double d = 0.03;
  CHECK(reputation_increment(4, 4, d, ReputationRule::signed_vote) == doctest::Approx(d));
  CHECK(reputation_increment(0, 4, d, ReputationRule::signed_vote) == doctest::Approx(-2 * d));
  // c = 2 - 2 = 0 takes the penalty branch: -d * (1 - 0).
  CHECK(reputation_increment(2, 4, d, ReputationRule::signed_vote) == doctest::Approx(-d));
  // c = 3 - 1 = 2 > 0: d * 2 / 4.
  CHECK(reputation_increment(3, 4, d, ReputationRule::signed_vote) == doctest::Approx(d / 2));
}

TEST_CASE("reputation increments, count majority") {
  const double d = 0.03;
  CHECK(reputation_increment(3, 4, d, ReputationRule::count_majority) ==
        doctest::Approx(0.75 * d));
  CHECK(reputation_increment(2, 4, d, ReputationRule::count_majority) ==
        doctest::Approx(-0.5 * d));
  CHECK(reputation_increment(0, 4, d, ReputationRule::count_majority) == doctest::Approx(-d));
  CHECK(reputation_rule_from_string(to_string(ReputationRule::count_majority)) ==
        ReputationRule::count_majority);
  CHECK_THROWS(reputation_rule_from_string("plurality"));
}

TEST_CASE("all beliefs above one raise reputation by delta") {
  const Topology t = star(4);
  FcState fc = FcState::initial(1, 2.0, 0.2, 0.03);
  BeliefSnapshot snap;
  for (int m = 0; m < 4; ++m) snap.edges.push_back({m, 0, 3.0});
  reputation_update(fc, snap, t);
  CHECK(fc.reputations[0] == doctest::Approx(1.03));
  for (auto& e : snap.edges) e.w = 1.0;
  reputation_update(fc, snap, t);
  CHECK(fc.reputations[0] == doctest::Approx(1.03 - 0.06));
}

TEST_CASE("single distrusting human identifies the sensor after 14 windows") {
  const Topology t = star(1);
  FcState fc = FcState::initial(1, 0.5, 0.2, 0.03);
  BeliefSnapshot snap;
  snap.edges.push_back({0, 0, 0.5});
  const int expected = oracle::windows_to_identification(0.06, 0.2);
  CHECK(expected == 14);
  int windows = 0;
  while (!fc.identified[0]) {
    reputation_update(fc, snap, t);
    ++windows;
  }
  CHECK(windows == expected);
  // Recovery does not clear the flag.
  snap.edges[0].w = 100.0;
  for (int k = 0; k < 100; ++k) reputation_update(fc, snap, t);
  CHECK(fc.reputations[0] > 0.2);
  CHECK(fc.identified[0] == 1);
}

TEST_CASE("identification threshold is strict") {
  FcState fc = FcState::initial(3, 1.0, 0.2, 0.03);
  CHECK(identify(fc).empty());
  fc.reputations = {0.19, 0.2, 0.5};
  const auto ids = identify(fc);
  REQUIRE(ids.size() == 1);
  CHECK(ids[0] == 0);
  CHECK(fc.identified_count() == 1);
}

TEST_CASE("snapshot must cover every edge") {
  const Topology t = star(3);
  FcState fc = FcState::initial(1, 1.5, 0.2, 0.03);
  BeliefSnapshot snap;
  snap.edges.push_back({0, 0, 2.0});
  CHECK_THROWS_AS(reputation_update(fc, snap, t), std::invalid_argument);
  snap.edges.push_back({1, 0, 2.0});
  snap.edges.push_back({1, 0, 2.0});
  CHECK_THROWS_AS(reputation_update(fc, snap, t), std::invalid_argument);
}
