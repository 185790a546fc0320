// ============================================================================
// belief.hpp -- per-human belief updating and sequential LR recursion
//
// Within a window of T steps a human keeps, for every connected physical
// sensor, the odds w that the sensor is honest, and a running likelihood
// ratio lambda for H1 vs H0. Step 1 uses only the human's own decision;
// later steps also fold in the sensors' reports, each weighted by the current
// identity belief. After every lambda update the posterior becomes the next
// prior: pi1 = lambda / (1 + lambda).
// ============================================================================
#pragma once
#include <span>
#include <vector>

#include "byzfuse/types.hpp"

namespace byzfuse {

/// P(u = 1 | H, identity) for honest (h) and Byzantine (b) senders.
struct ConditionalReportRates {
  double d_h = 0.0;
  double f_h = 0.0;
  double d_b = 0.0;
  double f_b = 0.0;
};

/// Flipping attack: a Byzantine sensor reports 1 - v.
ConditionalReportRates report_rates(const OperatingPoint& op) noexcept;

/// q = P(u = 1 | honest), r = P(u = 1 | Byzantine) under the current prior.
struct ReportProbabilities {
  double q = 0.0;
  double r = 0.0;
};

ReportProbabilities update_q_r(double pi1, const ConditionalReportRates& rates) noexcept;

/// Bayes update of the honest-vs-Byzantine odds after seeing report u.
/// Throws ModelError when the branch taken would divide by zero.
double update_belief(double w_prev, Bit u, const ReportProbabilities& qr);

/// LR for H1 vs H0 carried by report u, with the sender's identity
/// marginalized under odds w.
double delta_lr(double w, Bit u, const ConditionalReportRates& rates);

struct HumanState {
  int id = 0;
  std::vector<int> connected;   ///< sensor indices, ordered
  std::vector<double> beliefs;  ///< parallel to `connected`
  double xi = 0.0;              ///< LR threshold
  double beta = 0.5;            ///< P(b = 1 | H1), clamped
  double gamma = 0.5;           ///< P(b = 1 | H0), clamped
  double log_lambda = 0.0;
  double pi1 = 0.5;

  double lambda() const;
};

/// Reset beliefs to (1 - alpha_e) / alpha_e, the prior to `window_pi1` and
/// lambda to the prior odds. alpha_e and window_pi1 must lie in (0, 1).
void human_window_init(HumanState& state, double alpha_e, double window_pi1);

/// First step of a window: lambda = prior odds * human-observation term.
Bit human_first_step(HumanState& state, Bit b, double kappa_prime);

/// One report slot per connected sensor. Excluded sensors (identified as
/// Byzantine by the fusion center) contribute nothing and keep their belief.
struct SensorInput {
  Bit report = 0;
  ConditionalReportRates rates;
  bool excluded = false;
};

/// Later steps of a window. `inputs` must be parallel to `state.connected`;
/// a size mismatch is a caller bug and throws std::logic_error.
Bit human_step(HumanState& state, Bit b, std::span<const SensorInput> inputs, double kappa_prime);

/// log of beta^b (1-beta)^(1-b) / (gamma^b (1-gamma)^(1-b)).
double human_log_term(const HumanState& state, Bit b);

}  // namespace byzfuse
