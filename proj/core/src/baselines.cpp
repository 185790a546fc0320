// ============================================================================
// baselines.cpp -- CV / MR / MRH reference fusion rules
// ============================================================================
#include "byzfuse/baselines.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "byzfuse/model.hpp"

namespace byzfuse {

namespace {

int count_ones(std::span<const Bit> bits) { return std::accumulate(bits.begin(), bits.end(), 0); }

double bit_llr(Bit x, const OperatingPoint& mass) {
  const double p1 = clamp_probability(mass.pd);
  const double p0 = clamp_probability(mass.pf);
  return x ? std::log(p1) - std::log(p0) : std::log1p(-p1) - std::log1p(-p0);
}

}  // namespace

OperatingPoint attacked_report_mass(const OperatingPoint& op, double alpha) noexcept {
  // alpha + (1 - 2 alpha) p is exact at alpha = 0.5
  return {alpha + (1.0 - 2.0 * alpha) * op.pd, alpha + (1.0 - 2.0 * alpha) * op.pf};
}

double cv_sensor_term(const BaselineInputs& in) {
  if (!(in.alpha >= 0.0 && in.alpha < 1.0))
    throw std::invalid_argument("cv_fuse: alpha must lie in [0, 1)");
  const OperatingPoint mass = attacked_report_mass(in.sensor_op, in.alpha);
  double s = 0.0;
  for (Bit u : in.sensor_bits) s += bit_llr(u, mass);
  return s;
}

double cv_statistic(const BaselineInputs& in) {
  double s = cv_sensor_term(in);
  for (Bit b : in.human_bits) s += bit_llr(b, in.human_op);
  s += std::log(in.pi1) - std::log1p(-in.pi1);
  return s;
}

Bit cv_fuse(const BaselineInputs& in) { return cv_statistic(in) >= 0.0 ? Bit{1} : Bit{0}; }

Bit mr_fuse(std::span<const Bit> human_bits, std::span<const Bit> sensor_bits) {
  const std::size_t total = human_bits.size() + sensor_bits.size();
  const std::size_t need = (total + 1) / 2;
  const std::size_t ones = count_ones(human_bits) + count_ones(sensor_bits);
  return ones >= need ? Bit{1} : Bit{0};
}

Bit mrh_fuse(std::span<const Bit> human_bits) {
  const std::size_t need = (human_bits.size() + 1) / 2;
  return static_cast<std::size_t>(count_ones(human_bits)) >= need ? Bit{1} : Bit{0};
}

}  // namespace byzfuse
