// ============================================================================
// fusion.hpp -- fusion-center vote, sensor reputation, Byzantine identification
// ============================================================================
#pragma once
#include <span>
#include <string>
#include <vector>

#include "byzfuse/topology.hpp"
#include "byzfuse/types.hpp"

namespace byzfuse {

/// 1 iff sum(decisions) >= kappa. Ties decide H1. Empty input throws.
Bit fc_decide(std::span<const Bit> decisions, double kappa);

/// +1 iff w > 1, else -1.
int indicator(double w) noexcept;

/// How a window's per-human beliefs about sensor i move its reputation.
///  signed_vote:    c = sum of +-1 votes; A = D*c/|N_i| if c > 0,
///                  else -D*(1 - c/|N_i|).
///  count_majority: h = #{w > 1}; A = D*h/|N_i| if h > |N_i|/2,
///                  else -D*(1 - h/|N_i|).
enum class ReputationRule { signed_vote, count_majority };

std::string to_string(ReputationRule rule);
ReputationRule reputation_rule_from_string(const std::string& name);

double reputation_increment(int votes_honest, int degree, double delta_step, ReputationRule rule);

struct FcState {
  std::vector<double> reputations;
  std::vector<Bit> identified;  ///< 1 once flagged; never cleared
  double kappa = 10.0;
  double eta = 0.2;
  double delta_step = 0.03;
  ReputationRule rule = ReputationRule::signed_vote;

  /// Every reputation starts at 1, nothing identified.
  static FcState initial(int n_sensors, double kappa, double eta, double delta_step,
                         ReputationRule rule = ReputationRule::signed_vote);
  std::size_t identified_count() const;
};

/// End-of-window belief held by `human` about `sensor`, one per edge.
struct EdgeBelief {
  int human = 0;
  int sensor = 0;
  double w = 1.0;
};

struct BeliefSnapshot {
  std::vector<EdgeBelief> edges;
};

/// Apply one window's reputation increments and flag sensors below eta.
/// Throws std::invalid_argument when the snapshot does not cover every edge.
void reputation_update(FcState& fc, const BeliefSnapshot& snapshot, const Topology& topology);

/// {i : r_i < eta} merged into the identified set; returns the full set.
std::vector<int> identify(FcState& fc);

}  // namespace byzfuse
