// ============================================================================
// sideinfo.hpp -- OR / AND fusion of a human's decision with binary side
// information, closed-form error probabilities and the comparison predicates
// that tell when each operation helps.
//
// avg is the population-averaged human operating point (beta_bar, gamma_bar).
// ============================================================================
#pragma once
#include <string>
#include <utility>

#include "byzfuse/types.hpp"

namespace byzfuse {

struct SideInfoQuality {
  double beta_side = 0.0;   ///< P(w = 1 | H1)
  double gamma_side = 0.0;  ///< P(w = 1 | H0)

  void validate() const;
};

struct Priors {
  double pi0 = 0.5;
  double pi1 = 0.5;

  static Priors from_pi1(double pi1) { return {1.0 - pi1, pi1}; }
  void validate() const;
};

/// Ties in the comparison predicates are resolved with this absolute slack
/// on probability-scale quantities; a tie counts as "helps".
inline constexpr double kTieTolerance = 1e-12;

inline Bit or_combine(Bit b, Bit w) noexcept { return (b | w) ? Bit{1} : Bit{0}; }
inline Bit and_combine(Bit b, Bit w) noexcept { return (b & w) ? Bit{1} : Bit{0}; }

OperatingPoint or_operating_point(const SideInfoQuality& q, const OperatingPoint& avg) noexcept;
OperatingPoint and_operating_point(const SideInfoQuality& q, const OperatingPoint& avg) noexcept;

/// (f(e | H1), f(e | H0)) for the fused bit e.
std::pair<double, double> likelihoods_or(Bit e, const SideInfoQuality& q,
                                         const OperatingPoint& avg) noexcept;
std::pair<double, double> likelihoods_and(Bit e, const SideInfoQuality& q,
                                          const OperatingPoint& avg) noexcept;

/// pi0 * pf + pi1 * (1 - pd).
double error_probability(const OperatingPoint& op, const Priors& priors) noexcept;

/// AND improves on no side information.
bool side_and_helps(const SideInfoQuality& q, const OperatingPoint& avg, const Priors& priors);
/// OR improves on no side information.
bool side_or_helps(const SideInfoQuality& q, const OperatingPoint& avg, const Priors& priors);
/// OR is at least as good as AND.
bool side_or_beats_and(const SideInfoQuality& q, const OperatingPoint& avg, const Priors& priors);

/// Error probabilities for one (beta_side, gamma_side) point plus the best
/// of {none, or, and}; ties prefer none, then or.
struct SideInfoErrors {
  double none = 0.0;
  double or_op = 0.0;
  double and_op = 0.0;
  std::string best;
};

SideInfoErrors side_info_errors(const SideInfoQuality& q, const OperatingPoint& avg,
                                const Priors& priors);

}  // namespace byzfuse
