// ============================================================================
// model.hpp -- Gaussian signal model, likelihood ratios and operating points
//
// Observations under hypothesis H_h are N(mu_h, var_h). Physical sensors and
// humans threshold the likelihood ratio f(y|H1)/f(y|H0); sensors use a fixed
// threshold, humans a random one drawn from a Gaussian threshold distribution.
// The equal-variance model has a monotone LR and closed-form tail
// probabilities. Unequal variances are served by numerical quadrature only
// when explicitly allowed.
// ============================================================================
#pragma once
#include "byzfuse/types.hpp"

namespace byzfuse {

struct SignalModel {
  double mu0 = 0.0;
  double mu1 = 4.0;
  double var0 = 2.0;
  double var1 = 2.0;

  /// Throws ModelError on non-positive variances or mu0 == mu1.
  void validate() const;
  bool equal_variance() const noexcept { return var0 == var1; }

  friend bool operator==(const SignalModel&, const SignalModel&) = default;
};

/// Human LR-threshold distribution, N(mu_tau, sigma_tau^2). sigma_tau is a
/// standard deviation.
struct HumanThresholdDist {
  double mu_tau = 2.0;
  double sigma_tau = 2.0;

  void validate() const;

  friend bool operator==(const HumanThresholdDist&, const HumanThresholdDist&) = default;
};

/// Probabilities entering odds ratios are kept inside [kProbFloor, 1 - kProbFloor].
inline constexpr double kProbFloor = 1e-12;
double clamp_probability(double p) noexcept;
OperatingPoint clamp_operating_point(const OperatingPoint& op) noexcept;

double log_likelihood_ratio(double y, const SignalModel& model) noexcept;
double likelihood_ratio(double y, const SignalModel& model) noexcept;

/// Threshold test on an already computed LR; the boundary is accepted.
inline Bit decide_on_lr(double lr, double threshold) noexcept {
  return lr >= threshold ? Bit{1} : Bit{0};
}

/// Physical-sensor rule: 1 iff LR(y) >= tau.
Bit sensor_decide(double y, double tau, const SignalModel& model) noexcept;

/// Human rule: 1 iff LR(z) >= xi. A non-positive xi always yields 1.
Bit human_decide_raw(double z, double xi, const SignalModel& model) noexcept;

/// Observation-domain threshold y* with LR(y*) == tau on an equal-variance
/// model. Acceptance is y >= y* when mu1 > mu0 and y <= y* otherwise.
double observation_threshold(double tau, const SignalModel& model);

/// (P(LR >= tau | H1), P(LR >= tau | H0)) for tau > 0.
/// Unequal-variance models throw ModelError unless allow_quadrature is set.
OperatingPoint operating_point_for_lr_threshold(double tau, const SignalModel& model,
                                                bool allow_quadrature = false);

/// Same as above but legal for any xi: xi <= 0 accepts everything, (1, 1).
OperatingPoint human_operating_point(double xi, const SignalModel& model,
                                     bool allow_quadrature = false);

/// Population-averaged human ROC (beta_bar, gamma_bar): the per-threshold
/// operating point integrated against the threshold density. Absolute
/// quadrature error is bounded by 1e-9; QuadratureError otherwise.
OperatingPoint averaged_human_roc(const HumanThresholdDist& dist, const SignalModel& model,
                                  bool allow_quadrature = false);

}  // namespace byzfuse
