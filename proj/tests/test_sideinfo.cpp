// ============================================================================
// test_sideinfo.cpp
// ============================================================================
#include "byzfuse/model.hpp"
#include "byzfuse/sideinfo.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace byzfuse;

namespace {
const OperatingPoint kAvg{0.7, 0.2};
const Priors kEven{0.5, 0.5};
}  // namespace

TEST_CASE("bitwise combination") {
  CHECK(or_combine(0, 0) == 0);
  CHECK(or_combine(1, 0) == 1);
  CHECK(or_combine(0, 1) == 1);
  CHECK(and_combine(1, 1) == 1);
  CHECK(and_combine(1, 0) == 0);
  CHECK(and_combine(0, 1) == 0);
}

TEST_CASE("OR operating point") {
  const auto none = or_operating_point({0, 0}, kAvg);
  CHECK(none.pd == kAvg.pd);
  CHECK(none.pf == kAvg.pf);
  CHECK(or_operating_point({1, 0.3}, kAvg).pd == 1.0);
  const auto op = or_operating_point({0.8, 0.1}, kAvg);
  CHECK(op.pd == doctest::Approx(0.94));
  CHECK(op.pf == doctest::Approx(0.28));
  // Bernoulli simulation of the OR rule.
  auto rng = make_stream(5, 0);
  std::bernoulli_distribution b1(0.7), w1(0.8), b0(0.2), w0(0.1);
  oracle::Proportion pd{0, 200000}, pf{0, 200000};
  for (std::size_t k = 0; k < pd.n; ++k) {
    pd.hits += b1(rng) || w1(rng);
    pf.hits += b0(rng) || w0(rng);
  }
  CHECK(pd.within(op.pd));
  CHECK(pf.within(op.pf));
}

TEST_CASE("AND operating point") {
  const auto same = and_operating_point({1, 1}, kAvg);
  CHECK(same.pd == kAvg.pd);
  CHECK(same.pf == kAvg.pf);
  CHECK(and_operating_point({0, 0.5}, kAvg).pd == 0.0);
  const auto op = and_operating_point({0.9, 0.3}, kAvg);
  CHECK(op.pd == doctest::Approx(0.63));
  CHECK(op.pf == doctest::Approx(0.06));
}

TEST_CASE("fused-bit likelihoods") {
  const SideInfoQuality q{0.6, 0.15};
  CHECK(likelihoods_or(1, q, kAvg).first == doctest::Approx(or_operating_point(q, kAvg).pd));
  CHECK(likelihoods_or(0, q, kAvg).first == doctest::Approx(0.4 * 0.3));
  CHECK(likelihoods_and(1, q, kAvg).first == doctest::Approx(0.6 * 0.7));
  CHECK(likelihoods_and(0, q, kAvg).first == doctest::Approx(0.6 * 0.3 + 0.4));
}

TEST_CASE("error probability") {
  CHECK(error_probability({1, 0}, kEven) == 0.0);
  CHECK(error_probability({1, 1}, kEven) == 0.5);
  CHECK(error_probability(kAvg, kEven) == doctest::Approx(0.25));
}

TEST_CASE("AND helps above the derived beta_side boundary") {
  const double boundary = 1.0 - 0.9 / 3.5;
  CHECK(side_and_helps({boundary + 1e-6, 0.1}, kAvg, kEven));
  CHECK_FALSE(side_and_helps({boundary - 1e-6, 0.1}, kAvg, kEven));
  for (double g : {0.0, 0.4, 0.99}) CHECK(side_and_helps({1.0, g}, kAvg, kEven));
  CHECK_FALSE(side_and_helps({0.5, 1.0}, kAvg, kEven));
}

TEST_CASE("OR helps") {
  CHECK(side_or_helps({0.3, 0.0}, kAvg, kEven));
  CHECK(side_or_helps({0.9, 0.1}, kAvg, kEven));
  // beta_side = gamma_side: helps iff pi0 (1 - gamma_bar) <= pi1 (1 - beta_bar).
  CHECK_FALSE(side_or_helps({0.4, 0.4}, kAvg, kEven));
  CHECK(side_or_helps({0.4, 0.4}, {0.1, 0.95}, kEven));
}

TEST_CASE("OR against AND") {
  CHECK(side_or_beats_and({0, 0}, kAvg, kEven) == (kAvg.pd >= kAvg.pf));
  CHECK(side_or_beats_and({0, 0}, {0.3, 0.6}, kEven) == false);
  const auto e = side_info_errors({1, 1}, kAvg, kEven);
  CHECK(e.or_op == 0.5);
  CHECK(side_or_beats_and({1, 1}, kAvg, kEven) == (e.or_op <= e.and_op));
}

TEST_CASE("21 x 21 grid against exact comparison") {
  const oracle::ExactSideInfoSetting settings[] = {
      {{7, 10}, {1, 5}, {1, 2}}, {{89, 100}, {21, 100}, {1, 2}}, {{3, 5}, {1, 4}, {3, 10}}};
  int mismatches = 0;
  for (const auto& s : settings) {
    const OperatingPoint avg{oracle::to_double(s.beta_bar), oracle::to_double(s.gamma_bar)};
    const Priors pr = Priors::from_pi1(1.0 - oracle::to_double(s.pi0));
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const SideInfoQuality q{i / 20.0, j / 20.0};
        const auto ref = oracle::exact_side_info_comparison(s, {i, 20}, {j, 20});
        mismatches += side_and_helps(q, avg, pr) != ref.and_helps;
        mismatches += side_or_helps(q, avg, pr) != ref.or_helps;
        mismatches += side_or_beats_and(q, avg, pr) != ref.or_beats_and;
      }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("best operation prefers none, then OR, on ties") {
  CHECK(side_info_errors({0, 0}, kAvg, kEven).best == "none");
  CHECK(side_info_errors({1, 0}, kAvg, kEven).best == "or");
  CHECK(side_info_errors({0.95, 0.0}, kAvg, kEven).best == "or");
  CHECK(side_info_errors({0.99, 0.5}, {0.7, 0.5}, kEven).best == "and");
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS((SideInfoQuality{1.2, 0}.validate()));
  CHECK_THROWS((Priors{0.3, 0.3}.validate()));
}
