// ============================================================================
// model.cpp -- Gaussian signal model, likelihood ratios and operating points
// ============================================================================
#include "byzfuse/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace byzfuse {

namespace {

constexpr double kQuadratureTarget = 1e-9;

// Upper tail of the standard normal.
double std_normal_sf(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }
double std_normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double clamp01(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

double std_normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive bisection over 61-point Gauss-Kronrod panels. Boost is used for
// the panel rule only (depth 0); its error output on a panel is in units of
// the [-1, 1] reference interval, so it is rescaled by the half-width here.
template <class F>
Quadrature adaptive_gk(const F& f, double a, double b, double abs_tol, int depth = 0) {
  double raw_err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &raw_err);
  const double err = raw_err * 0.5 * std::abs(b - a);
  if (err <= abs_tol || depth >= 40) return {v, err};
  const double mid = 0.5 * (a + b);
  const Quadrature left = adaptive_gk(f, a, mid, 0.5 * abs_tol, depth + 1);
  const Quadrature right = adaptive_gk(f, mid, b, 0.5 * abs_tol, depth + 1);
  return {left.value + right.value, left.error + right.error};
}

template <class F>
double integrate(F&& f, double lo, double hi, double* err_out) {
  const Quadrature q = adaptive_gk(f, lo, hi, 1e-13);
  if (err_out) *err_out = q.error;
  return q.value;
}

// Acceptance region {y : log LR(y) >= log tau} as a union of closed intervals,
// for the general (quadratic log-LR) model.
std::vector<std::pair<double, double>> acceptance_intervals(double log_tau,
                                                            const SignalModel& m) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double a = 0.5 / m.var0 - 0.5 / m.var1;
  const double b = m.mu1 / m.var1 - m.mu0 / m.var0;
  const double c = 0.5 * m.mu0 * m.mu0 / m.var0 - 0.5 * m.mu1 * m.mu1 / m.var1 -
                   0.5 * std::log(m.var1 / m.var0) - log_tau;
  if (a == 0.0) {
    const double y = -c / b;
    if (b > 0) return {{y, inf}};
    return {{-inf, y}};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc <= 0.0) {
    if (a > 0) return {{-inf, inf}};
    return {};
  }
  const double sq = std::sqrt(disc);
  double r1 = (-b - sq) / (2.0 * a);
  double r2 = (-b + sq) / (2.0 * a);
  if (r1 > r2) std::swap(r1, r2);
  if (a > 0) return {{-inf, r1}, {r2, inf}};
  return {{r1, r2}};
}

OperatingPoint quadrature_operating_point(double tau, const SignalModel& m) {
  const auto intervals = acceptance_intervals(std::log(tau), m);
  auto mass = [&](double mu, double var) {
    const double sd = std::sqrt(var);
    double total = 0.0;
    for (const auto& [lo, hi] : intervals) {
      double err = 0.0;
      // Integrate in standardized units so the kernel is well scaled.
      // Standardized bounds; the weight outside [-40, 40] is below 1e-300.
      const double a = std::clamp((lo - mu) / sd, -40.0, 40.0);
      const double b = std::clamp((hi - mu) / sd, -40.0, 40.0);
      if (!(b > a)) continue;
      total += integrate([](double s) { return std_normal_pdf(s); }, a, b, &err);
      if (err > kQuadratureTarget)
        throw QuadratureError("operating point quadrature did not converge", err);
    }
    return std::clamp(total, 0.0, 1.0);
  };
  return {mass(m.mu1, m.var1), mass(m.mu0, m.var0)};
}

}  // namespace

void SignalModel::validate() const {
  if (!(var0 > 0.0) || !(var1 > 0.0)) throw ModelError("signal variances must be positive");
  if (mu0 == mu1) throw ModelError("signal means must differ (mu0 == mu1 is undetectable)");
  if (!std::isfinite(mu0) || !std::isfinite(mu1) || !std::isfinite(var0) || !std::isfinite(var1))
    throw ModelError("signal parameters must be finite");
}

void HumanThresholdDist::validate() const {
  if (!(sigma_tau > 0.0) || !std::isfinite(sigma_tau))
    throw ModelError("human threshold spread sigma_tau must be positive");
  if (!std::isfinite(mu_tau)) throw ModelError("human threshold mean mu_tau must be finite");
}

double clamp_probability(double p) noexcept { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

OperatingPoint clamp_operating_point(const OperatingPoint& op) noexcept {
  return {clamp_probability(op.pd), clamp_probability(op.pf)};
}

double log_likelihood_ratio(double y, const SignalModel& m) noexcept {
  const double d1 = y - m.mu1;
  const double d0 = y - m.mu0;
  return -0.5 * std::log(m.var1 / m.var0) - d1 * d1 / (2.0 * m.var1) + d0 * d0 / (2.0 * m.var0);
}

double likelihood_ratio(double y, const SignalModel& m) noexcept {
  return std::exp(log_likelihood_ratio(y, m));
}

Bit sensor_decide(double y, double tau, const SignalModel& m) noexcept {
  return decide_on_lr(likelihood_ratio(y, m), tau);
}

Bit human_decide_raw(double z, double xi, const SignalModel& m) noexcept {
  return decide_on_lr(likelihood_ratio(z, m), xi);
}

double observation_threshold(double tau, const SignalModel& m) {
  if (!m.equal_variance()) throw ModelError("observation threshold needs equal variances");
  if (!(tau > 0.0)) throw ModelError("LR threshold must be positive");
  // log LR = slope * y + intercept
  const double slope = (m.mu1 - m.mu0) / m.var0;
  const double intercept = (m.mu0 * m.mu0 - m.mu1 * m.mu1) / (2.0 * m.var0);
  return (std::log(tau) - intercept) / slope;
}

OperatingPoint operating_point_for_lr_threshold(double tau, const SignalModel& m,
                                                bool allow_quadrature) {
  if (!(tau > 0.0)) throw ModelError("LR threshold must be positive");
  if (!m.equal_variance()) {
    if (!allow_quadrature)
      throw ModelError("unequal variances give a non-monotone LR; enable the quadrature path");
    return quadrature_operating_point(tau, m);
  }
  const double y_star = observation_threshold(tau, m);
  const double sd = std::sqrt(m.var0);
  if (m.mu1 > m.mu0)
    return {std_normal_sf((y_star - m.mu1) / sd), std_normal_sf((y_star - m.mu0) / sd)};
  return {std_normal_cdf((y_star - m.mu1) / sd), std_normal_cdf((y_star - m.mu0) / sd)};
}

OperatingPoint human_operating_point(double xi, const SignalModel& m, bool allow_quadrature) {
  if (xi <= 0.0) return {1.0, 1.0};
  return operating_point_for_lr_threshold(xi, m, allow_quadrature);
}

OperatingPoint averaged_human_roc(const HumanThresholdDist& dist, const SignalModel& m,
                                  bool allow_quadrature) {
  dist.validate();
  const double mu = dist.mu_tau;
  const double sigma = dist.sigma_tau;
  // Thresholds at or below zero accept with probability one: Phi(-mu/sigma).
  const double below = std_normal_cdf(-mu / sigma);

  // Positive thresholds are integrated in standardized units s = (xi - mu) /
  // sigma, over panels cut at mu + k sigma (narrow densities) and at
  // xi = e^-j (the operating point has a boundary layer as xi -> 0+ that is
  // smooth only on a log scale). Below the smallest cut the operating point
  // is (1, 1) to within 1e-80.
  constexpr int kSpan = 12;
  const double lo_xi = std::max(0.0, mu - kSpan * sigma);
  const double hi_xi = mu + kSpan * sigma;
  if (hi_xi <= 0.0) return {clamp01(below), clamp01(below)};
  std::vector<double> cuts;
  for (int k = -kSpan; k <= kSpan; ++k) {
    const double xi = mu + k * sigma;
    if (xi > lo_xi && xi > 0.0) cuts.push_back(xi);
  }
  for (int j = -8; j <= 60; ++j) {
    const double xi = std::exp(-static_cast<double>(j));
    if (xi > lo_xi && xi < hi_xi) cuts.push_back(xi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Mass in (0, first cut) when the density reaches down to zero.
  const double first = cuts.front();
  const double near_zero =
      lo_xi == 0.0 ? std_normal_cdf((first - mu) / sigma) - std_normal_cdf(-mu / sigma) : 0.0;

  auto tail = [&](bool detection) {
    auto f = [&](double s) {
      const OperatingPoint op = human_operating_point(mu + sigma * s, m, allow_quadrature);
      return std_normal_pdf(s) * (detection ? op.pd : op.pf);
    };
    double total = near_zero;
    double err = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      double e = 0.0;
      total += integrate(f, (cuts[k] - mu) / sigma, (cuts[k + 1] - mu) / sigma, &e);
      err += e;
    }
    if (err > kQuadratureTarget)
      throw QuadratureError("averaged human ROC quadrature error " + std::to_string(err) +
                                " exceeds 1e-9",
                            err);
    return total;
  };
  return {clamp01(below + tail(true)), clamp01(below + tail(false))};
}

}  // namespace byzfuse
