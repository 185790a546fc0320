// ============================================================================
// test_belief.cpp
// ============================================================================
#include <cmath>
#include <vector>

#include "byzfuse/belief.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace byzfuse;

namespace {
const OperatingPoint kSensor{0.8787886205641993, 0.048529883262602574};

HumanState make_human(int sensors, double beta, double gamma) {
  HumanState s;
  for (int i = 0; i < sensors; ++i) s.connected.push_back(i);
  s.beta = beta;
  s.gamma = gamma;
  return s;
}
}  // namespace

TEST_CASE("report rates under the flipping attack") {
  const auto r = report_rates(kSensor);
  CHECK(r.d_h == kSensor.pd);
  CHECK(r.d_b == doctest::Approx(0.1212).epsilon(1e-3));
  CHECK(r.f_b == doctest::Approx(0.9515).epsilon(1e-4));
  const auto half = report_rates({0.5, 0.5});
  CHECK((half.d_h == 0.5 && half.f_h == 0.5 && half.d_b == 0.5 && half.f_b == 0.5));
  const auto perfect = report_rates({1.0, 0.0});
  CHECK(perfect.d_b == 0.0);
  CHECK(perfect.f_b == 1.0);
}

TEST_CASE("q and r from the current prior") {
  const auto rates = report_rates(kSensor);
  const auto qr = update_q_r(0.5, rates);
  // Direct enumeration over both hypotheses.
  const double q = 0.5 * kSensor.pd + 0.5 * kSensor.pf;
  const double r = 0.5 * (1 - kSensor.pd) + 0.5 * (1 - kSensor.pf);
  CHECK(qr.q == doctest::Approx(q).epsilon(1e-15));
  CHECK(qr.r == doctest::Approx(r).epsilon(1e-15));
  CHECK(qr.q == doctest::Approx(0.4637).epsilon(1e-3));
  CHECK(qr.q + qr.r == doctest::Approx(1.0).epsilon(1e-15));
  const auto one = update_q_r(1.0, rates);
  CHECK(one.q == rates.d_h);
  CHECK(one.r == rates.d_b);
  const auto zero = update_q_r(0.0, rates);
  CHECK(zero.q == rates.f_h);
  CHECK(zero.r == rates.f_b);
}

TEST_CASE("belief update") {
  CHECK(update_belief(1.0, 1, {0.8, 0.2}) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(update_belief(3.0, 0, {0.4, 0.4}) == 3.0);
  CHECK(update_belief(3.0, 1, {0.4, 0.4}) == 3.0);
  // Recursion against the batch product over two steps.
  const double w0 = 2.5;
  const ReportProbabilities s1{0.7, 0.3}, s2{0.6, 0.45};
  const double rec = update_belief(update_belief(w0, 1, s1), 0, s2);
  const double batch = w0 * (0.7 / 0.3) * ((1 - 0.6) / (1 - 0.45));
  CHECK(rec == doctest::Approx(batch).epsilon(1e-12));
  CHECK_THROWS_AS(update_belief(1.0, 1, {0.5, 0.0}), ModelError);
  CHECK_THROWS_AS(update_belief(1.0, 0, {0.5, 1.0}), ModelError);
}

TEST_CASE("delta factors") {
  const auto rates = report_rates(kSensor);
  CHECK(delta_lr(1.0, 1, rates) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(delta_lr(1.0, 0, rates) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(delta_lr(1e12, 1, rates) == doctest::Approx(kSensor.pd / kSensor.pf).epsilon(1e-9));
  CHECK(delta_lr(0.0, 1, rates) == doctest::Approx(0.1274).epsilon(1e-3));
  CHECK(delta_lr(0.0, 1, rates) == doctest::Approx(rates.d_b / rates.f_b).epsilon(1e-15));
  CHECK_THROWS_AS(delta_lr(0.0, 1, report_rates({1.0, 1.0})), ModelError);
}

TEST_CASE("window initialization") {
  HumanState s = make_human(3, 0.8, 0.2);
  human_window_init(s, 0.5, 0.5);
  for (double w : s.beliefs) CHECK(w == 1.0);
  CHECK(s.lambda() == doctest::Approx(1.0));
  human_window_init(s, 0.1, 0.5);
  for (double w : s.beliefs) CHECK(w == doctest::Approx(9.0));
  human_window_init(s, 0.9, 0.5);
  for (double w : s.beliefs) CHECK(w == doctest::Approx(1.0 / 9.0));
  CHECK_THROWS_AS(human_window_init(s, 0.0, 0.5), ModelError);
  CHECK_THROWS_AS(human_window_init(s, 1.0, 0.5), ModelError);
}

TEST_CASE("first step uses the human bit only") {
  HumanState s = make_human(2, 0.8, 0.2);
  human_window_init(s, 0.5, 0.5);
  CHECK(human_first_step(s, 1, 1.0) == 1);
  CHECK(s.lambda() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s.pi1 == doctest::Approx(0.8).epsilon(1e-14));
  human_window_init(s, 0.5, 0.5);
  CHECK(human_first_step(s, 0, 1.0) == 0);
  CHECK(s.lambda() == doctest::Approx(0.25).epsilon(1e-14));

  HumanState flat = make_human(1, 0.4, 0.4);
  for (Bit b : {Bit{0}, Bit{1}}) {
    human_window_init(flat, 0.5, 0.3);
    human_first_step(flat, b, 1.0);
    CHECK(flat.lambda() == doctest::Approx(0.3 / 0.7).epsilon(1e-14));
  }
}

TEST_CASE("excluded sensors with an uninformative human change nothing") {
  HumanState s = make_human(2, 0.6, 0.6);
  human_window_init(s, 0.3, 0.5);
  human_first_step(s, 1, 1.0);
  const double before = s.log_lambda;
  const auto beliefs = s.beliefs;
  const auto rates = report_rates(kSensor);
  const std::vector<SensorInput> in{{1, rates, true}, {0, rates, true}};
  human_step(s, 1, in, 1.0);
  CHECK(s.log_lambda == doctest::Approx(before).epsilon(1e-15));
  CHECK(s.beliefs == beliefs);
}

TEST_CASE("a single report at even odds is ignored") {
  HumanState s = make_human(1, 0.7, 0.3);
  human_window_init(s, 0.5, 0.5);
  human_first_step(s, 1, 1.0);
  const double before = s.log_lambda;
  const SensorInput in{1, report_rates(kSensor), false};
  human_step(s, 1, std::span(&in, 1), 1.0);
  CHECK(s.log_lambda - before == doctest::Approx(std::log(0.7 / 0.3)).epsilon(1e-14));
}

TEST_CASE("size mismatch is a caller bug") {
  HumanState s = make_human(2, 0.7, 0.3);
  human_window_init(s, 0.5, 0.5);
  const SensorInput in{1, report_rates(kSensor), false};
  CHECK_THROWS_AS(human_step(s, 1, std::span(&in, 1), 1.0), std::logic_error);
}

TEST_CASE("T = 3 window matches exhaustive enumeration for every report sequence") {
  // One human, two sensors, all 2^3 human bit patterns x 2^4 report patterns.
  const double beta = 0.8908, gamma = 0.2091;
  for (double alpha_e : {0.1, 0.5, 0.8}) {
    for (unsigned pattern = 0; pattern < 128; ++pattern) {
      std::vector<Bit> hb{Bit(pattern & 1u), Bit((pattern >> 1) & 1u), Bit((pattern >> 2) & 1u)};
      std::vector<std::vector<Bit>> reports{{Bit((pattern >> 3) & 1u), Bit((pattern >> 4) & 1u)},
                                            {Bit((pattern >> 5) & 1u), Bit((pattern >> 6) & 1u)}};
      HumanState s = make_human(2, beta, gamma);
      human_window_init(s, alpha_e, 0.5);
      human_first_step(s, hb[0], 1.0);
      const auto rates = report_rates(kSensor);
      for (int t = 1; t < 3; ++t) {
        const std::vector<SensorInput> in{{reports[t - 1][0], rates, false},
                                          {reports[t - 1][1], rates, false}};
        human_step(s, hb[t], in, 1.0);
      }
      const auto ref =
          oracle::enumerate_window({alpha_e, 0.5, beta, gamma, kSensor}, hb, reports);
      CHECK(std::abs(s.lambda() / ref.lambda - 1.0) <= 1e-10);
      CHECK(std::abs(s.beliefs[0] / ref.beliefs[0] - 1.0) <= 1e-10);
      CHECK(std::abs(s.beliefs[1] / ref.beliefs[1] - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("lambda survives extreme operating points in the log domain") {
  HumanState s = make_human(4, 1.0 - 1e-12, 1e-12);
  human_window_init(s, 0.01, 0.5);
  human_first_step(s, 1, 1.0);
  const auto rates = report_rates({1.0 - 1e-12, 1e-12});
  const std::vector<SensorInput> in(4, SensorInput{1, rates, false});
  for (int t = 1; t < 60; ++t) human_step(s, 1, in, 1.0);
  CHECK(std::isfinite(s.log_lambda));
  CHECK(s.pi1 <= 1.0);
  CHECK(s.pi1 > 0.5);
}
