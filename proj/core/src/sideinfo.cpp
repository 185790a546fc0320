// ============================================================================
// sideinfo.cpp -- OR / AND side-information fusion
// ============================================================================
#include "byzfuse/sideinfo.hpp"

#include <cmath>

namespace byzfuse {

namespace {
bool unit(double p) { return p >= 0.0 && p <= 1.0; }
}  // namespace

void SideInfoQuality::validate() const {
  if (!unit(beta_side)) throw ConfigError("beta_side", "must lie in [0, 1]");
  if (!unit(gamma_side)) throw ConfigError("gamma_side", "must lie in [0, 1]");
}

void Priors::validate() const {
  if (!unit(pi0) || !unit(pi1) || std::abs(pi0 + pi1 - 1.0) > 1e-12)
    throw ConfigError("window_prior", "priors must be probabilities summing to 1");
}

OperatingPoint or_operating_point(const SideInfoQuality& q, const OperatingPoint& avg) noexcept {
  return {q.beta_side + (1.0 - q.beta_side) * avg.pd,
          q.gamma_side + (1.0 - q.gamma_side) * avg.pf};
}

OperatingPoint and_operating_point(const SideInfoQuality& q, const OperatingPoint& avg) noexcept {
  return {q.beta_side * avg.pd, q.gamma_side * avg.pf};
}

std::pair<double, double> likelihoods_or(Bit e, const SideInfoQuality& q,
                                         const OperatingPoint& avg) noexcept {
  const double x = e ? 1.0 : 0.0;
  const double h1 = q.beta_side * x + (1.0 - q.beta_side) * (e ? avg.pd : 1.0 - avg.pd);
  const double h0 = q.gamma_side * x + (1.0 - q.gamma_side) * (e ? avg.pf : 1.0 - avg.pf);
  return {h1, h0};
}

std::pair<double, double> likelihoods_and(Bit e, const SideInfoQuality& q,
                                          const OperatingPoint& avg) noexcept {
  const double not_e = e ? 0.0 : 1.0;
  const double h1 = q.beta_side * (e ? avg.pd : 1.0 - avg.pd) + (1.0 - q.beta_side) * not_e;
  const double h0 = q.gamma_side * (e ? avg.pf : 1.0 - avg.pf) + (1.0 - q.gamma_side) * not_e;
  return {h1, h0};
}

double error_probability(const OperatingPoint& op, const Priors& p) noexcept {
  return p.pi0 * op.pf + p.pi1 * (1.0 - op.pd);
}

// The three predicates are the ratio inequalities multiplied through by
// their (non-negative) denominators, which keeps the boundary cases
// beta_side = 1, gamma_side = 0, gamma_bar = 0 well defined.

bool side_and_helps(const SideInfoQuality& q, const OperatingPoint& avg, const Priors& p) {
  const double lhs = avg.pd * p.pi1 * (1.0 - q.beta_side);
  const double rhs = p.pi0 * (1.0 - q.gamma_side) * avg.pf;
  return lhs <= rhs + kTieTolerance;
}

bool side_or_helps(const SideInfoQuality& q, const OperatingPoint& avg, const Priors& p) {
  const double lhs = p.pi0 * (1.0 - avg.pf) * q.gamma_side;
  const double rhs = p.pi1 * (1.0 - avg.pd) * q.beta_side;
  return lhs <= rhs + kTieTolerance;
}

bool side_or_beats_and(const SideInfoQuality& q, const OperatingPoint& avg, const Priors& p) {
  const double lhs =
      p.pi0 * (1.0 - 2.0 * avg.pf) * q.gamma_side - p.pi1 * (1.0 - 2.0 * avg.pd) * q.beta_side;
  const double rhs = p.pi1 * avg.pd - p.pi0 * avg.pf;
  return lhs <= rhs + kTieTolerance;
}

SideInfoErrors side_info_errors(const SideInfoQuality& q, const OperatingPoint& avg,
                                const Priors& p) {
  SideInfoErrors out;
  out.none = error_probability(avg, p);
  out.or_op = error_probability(or_operating_point(q, avg), p);
  out.and_op = error_probability(and_operating_point(q, avg), p);
  out.best = "none";
  double best = out.none;
  if (out.or_op < best - kTieTolerance) {
    best = out.or_op;
    out.best = "or";
  }
  if (out.and_op < best - kTieTolerance) out.best = "and";
  return out;
}

}  // namespace byzfuse
