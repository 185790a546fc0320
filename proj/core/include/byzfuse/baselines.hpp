// ============================================================================
// baselines.hpp -- reference fusion rules: Chair-Varshney (CV), majority over
// all sensors (MR) and majority over humans only (MRH)
// ============================================================================
#pragma once
#include <span>

#include "byzfuse/types.hpp"

namespace byzfuse {

struct BaselineInputs {
  std::span<const Bit> human_bits;
  std::span<const Bit> sensor_bits;
  double alpha = 0.0;         ///< Byzantine fraction assumed by the rule
  OperatingPoint sensor_op;   ///< honest-sensor operating point
  OperatingPoint human_op;    ///< population-averaged human operating point
  double pi1 = 0.5;
};

/// Sensor-report mass under the flipping attack:
/// P(u = 1 | H1) = (1 - alpha) pd + alpha (1 - pd), likewise for H0.
OperatingPoint attacked_report_mass(const OperatingPoint& sensor_op, double alpha) noexcept;

/// Sum of per-sensor log-likelihood ratios only.
double cv_sensor_term(const BaselineInputs& in);
/// Full CV log-likelihood statistic, prior term included.
double cv_statistic(const BaselineInputs& in);
/// H1 iff cv_statistic >= 0. Throws std::invalid_argument unless 0 <= alpha < 1.
Bit cv_fuse(const BaselineInputs& in);

/// H1 iff sum(sensors) + sum(humans) >= ceil((N + M) / 2).
Bit mr_fuse(std::span<const Bit> human_bits, std::span<const Bit> sensor_bits);
/// H1 iff sum(humans) >= ceil(M / 2).
Bit mrh_fuse(std::span<const Bit> human_bits);

}  // namespace byzfuse
