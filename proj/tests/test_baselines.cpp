// ============================================================================
// test_baselines.cpp
// ============================================================================
#include <cmath>
#include <vector>

#include "byzfuse/baselines.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace byzfuse;

namespace {
const OperatingPoint kSensor{0.8788, 0.0485};
const OperatingPoint kHuman{0.8908, 0.2091};

std::vector<Bit> ones_then_zeros(int ones, int total) {
  std::vector<Bit> v(total, 0);
  for (int k = 0; k < ones; ++k) v[k] = 1;
  return v;
}
}  // namespace

TEST_CASE("attacked report mass") {
  const auto half = attacked_report_mass(kSensor, 0.5);
  CHECK(half.pd == 0.5);
  CHECK(half.pf == 0.5);
  const auto none = attacked_report_mass(kSensor, 0.0);
  CHECK(none.pd == kSensor.pd);
  const auto all = attacked_report_mass(kSensor, 1.0);
  CHECK(all.pd == doctest::Approx(1 - kSensor.pd));
}

TEST_CASE("CV at alpha = 0.5 listens to humans only") {
  const auto h = ones_then_zeros(12, 20);
  const auto s1 = ones_then_zeros(0, 60), s2 = ones_then_zeros(60, 60);
  BaselineInputs a{h, s1, 0.5, kSensor, kHuman, 0.5};
  BaselineInputs b{h, s2, 0.5, kSensor, kHuman, 0.5};
  CHECK(cv_sensor_term(a) == 0.0);
  CHECK(cv_fuse(a) == cv_fuse(b));
  CHECK(cv_statistic(a) == cv_statistic(b));
}

TEST_CASE("CV with one sensor and no humans is the one-observation posterior") {
  const std::vector<Bit> h;
  const std::vector<Bit> s{1};
  BaselineInputs in{h, s, 0.0, kSensor, kHuman, 0.5};
  CHECK(cv_fuse(in) == 1);
  CHECK(cv_statistic(in) == doctest::Approx(std::log(kSensor.pd / kSensor.pf)));
  CHECK(cv_statistic(in) == doctest::Approx(2.90).epsilon(0.01));
  const double odds = oracle::posterior_odds({1}, {kSensor}, 0.5);
  CHECK(std::exp(cv_statistic(in)) == doctest::Approx(odds).epsilon(1e-12));
}

TEST_CASE("flipping every sensor bit and alpha mirrors the sensor term") {
  const std::vector<Bit> h;
  const std::vector<Bit> s{1, 0, 1, 1, 0};
  std::vector<Bit> flipped;
  for (Bit b : s) flipped.push_back(1 - b);
  for (double alpha : {0.05, 0.2, 0.45, 0.7}) {
    BaselineInputs a{h, s, alpha, kSensor, kHuman, 0.5};
    BaselineInputs b{h, flipped, 1.0 - alpha, kSensor, kHuman, 0.5};
    CHECK(cv_sensor_term(a) == doctest::Approx(cv_sensor_term(b)).epsilon(1e-12));
  }
}

TEST_CASE("CV rejects alpha outside [0, 1)") {
  const std::vector<Bit> h{1}, s{1};
  CHECK_THROWS_AS(cv_fuse({h, s, 1.0, kSensor, kHuman, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(cv_fuse({h, s, -0.1, kSensor, kHuman, 0.5}), std::invalid_argument);
}

TEST_CASE("majority over everything") {
  const auto h = ones_then_zeros(0, 20);
  CHECK(mr_fuse(h, ones_then_zeros(41, 60)) == 1);
  CHECK(mr_fuse(h, ones_then_zeros(39, 60)) == 0);
  CHECK(mr_fuse(h, ones_then_zeros(40, 60)) == 1);
  CHECK(mr_fuse(ones_then_zeros(1, 1), std::vector<Bit>{0, 0}) == 0);
  CHECK(mr_fuse(ones_then_zeros(1, 1), std::vector<Bit>{1, 0}) == 1);
}

TEST_CASE("majority over humans") {
  CHECK(mrh_fuse(ones_then_zeros(11, 20)) == 1);
  CHECK(mrh_fuse(ones_then_zeros(9, 20)) == 0);
  CHECK(mrh_fuse(ones_then_zeros(10, 20)) == 1);
  CHECK(mrh_fuse(ones_then_zeros(2, 5)) == 0);
  CHECK(mrh_fuse(ones_then_zeros(3, 5)) == 1);
}
