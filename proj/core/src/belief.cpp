// ============================================================================
// belief.cpp -- per-human belief updating and sequential LR recursion
// ============================================================================
#include "byzfuse/belief.hpp"

#include <cmath>
#include <stdexcept>

namespace byzfuse {

namespace {

void refresh_prior(HumanState& s) {
  // pi1 = lambda / (1 + lambda), evaluated without overflow.
  s.pi1 = 1.0 / (1.0 + std::exp(-s.log_lambda));
}

Bit decide(const HumanState& s, double kappa_prime) {
  return s.log_lambda >= std::log(kappa_prime) ? Bit{1} : Bit{0};
}

}  // namespace

ConditionalReportRates report_rates(const OperatingPoint& op) noexcept {
  return {op.pd, op.pf, 1.0 - op.pd, 1.0 - op.pf};
}

ReportProbabilities update_q_r(double pi1, const ConditionalReportRates& rates) noexcept {
  const double pi0 = 1.0 - pi1;
  return {pi1 * rates.d_h + pi0 * rates.f_h, pi1 * rates.d_b + pi0 * rates.f_b};
}

double update_belief(double w_prev, Bit u, const ReportProbabilities& qr) {
  if (u) {
    if (!(qr.r > 0.0)) throw ModelError("degenerate report rates: r == 0 on a u = 1 update");
    return w_prev * (qr.q / qr.r);
  }
  if (!(qr.r < 1.0)) throw ModelError("degenerate report rates: r == 1 on a u = 0 update");
  return w_prev * ((1.0 - qr.q) / (1.0 - qr.r));
}

double delta_lr(double w, Bit u, const ConditionalReportRates& x) {
  const double db = u ? x.d_b : 1.0 - x.d_b, dh = u ? x.d_h : 1.0 - x.d_h;
  const double fb = u ? x.f_b : 1.0 - x.f_b, fh = u ? x.f_h : 1.0 - x.f_h;
  // Divide through by w when it is large so an overflowed belief still
  // yields the honest-sensor limit dh / fh.
  const double inv = w > 1.0 ? 1.0 / w : 1.0;
  const double num = w > 1.0 ? db * inv + dh : db + dh * w;
  const double den = w > 1.0 ? fb * inv + fh : fb + fh * w;
  if (!(den > 0.0)) throw ModelError("degenerate operating point: non-positive delta denominator");
  return num / den;
}

double HumanState::lambda() const { return std::exp(log_lambda); }

double human_log_term(const HumanState& s, Bit b) {
  return b ? std::log(s.beta) - std::log(s.gamma) : std::log1p(-s.beta) - std::log1p(-s.gamma);
}

void human_window_init(HumanState& s, double alpha_e, double window_pi1) {
  if (!(alpha_e > 0.0 && alpha_e < 1.0))
    throw ModelError("alpha_e must lie strictly between 0 and 1");
  if (!(window_pi1 > 0.0 && window_pi1 < 1.0))
    throw ModelError("window prior must lie strictly between 0 and 1");
  s.beliefs.assign(s.connected.size(), (1.0 - alpha_e) / alpha_e);
  s.pi1 = window_pi1;
  s.log_lambda = std::log(window_pi1) - std::log1p(-window_pi1);
}

Bit human_first_step(HumanState& s, Bit b, double kappa_prime) {
  s.log_lambda += human_log_term(s, b);
  refresh_prior(s);
  return decide(s, kappa_prime);
}

Bit human_step(HumanState& s, Bit b, std::span<const SensorInput> inputs, double kappa_prime) {
  if (inputs.size() != s.connected.size() || s.beliefs.size() != s.connected.size())
    throw std::logic_error("human_step: one report slot per connected sensor is required");

  double log_lambda = s.log_lambda + human_log_term(s, b);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const SensorInput& in = inputs[k];
    if (in.excluded) continue;
    // q, r use the prior held before this step; delta uses the pre-update belief.
    const ReportProbabilities qr = update_q_r(s.pi1, in.rates);
    log_lambda += std::log(delta_lr(s.beliefs[k], in.report, in.rates));
    s.beliefs[k] = update_belief(s.beliefs[k], in.report, qr);
  }
  s.log_lambda = log_lambda;
  refresh_prior(s);
  return decide(s, kappa_prime);
}

}  // namespace byzfuse
