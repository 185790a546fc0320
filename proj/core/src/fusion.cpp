// ============================================================================
// fusion.cpp -- fusion-center vote, sensor reputation, Byzantine identification
// ============================================================================
#include "byzfuse/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace byzfuse {

Bit fc_decide(std::span<const Bit> decisions, double kappa) {
  if (decisions.empty()) throw std::invalid_argument("fc_decide: no human decisions");
  const int sum = std::accumulate(decisions.begin(), decisions.end(), 0);
  return static_cast<double>(sum) >= kappa ? Bit{1} : Bit{0};
}

int indicator(double w) noexcept { return w > 1.0 ? 1 : -1; }

std::string to_string(ReputationRule rule) {
  return rule == ReputationRule::signed_vote ? "signed_vote" : "count_majority";
}

ReputationRule reputation_rule_from_string(const std::string& name) {
  if (name == "signed_vote") return ReputationRule::signed_vote;
  if (name == "count_majority") return ReputationRule::count_majority;
  throw ConfigError("reputation_rule", "unknown rule '" + name +
                                           "' (expected signed_vote or count_majority)");
}

double reputation_increment(int votes_honest, int degree, double delta, ReputationRule rule) {
  if (degree < 1) throw std::invalid_argument("reputation_increment: sensor has no humans");
  const double n = degree;
  if (rule == ReputationRule::signed_vote) {
    const int c = 2 * votes_honest - degree;  // sum of +-1 indicators
    if (c > 0) return delta * c / n;
    return -delta * (1.0 - c / n);
  }
  const int h = votes_honest;
  if (2 * h > degree) return delta * h / n;
  return -delta * (1.0 - h / n);
}

FcState FcState::initial(int n_sensors, double kappa, double eta, double delta_step,
                         ReputationRule rule) {
  FcState fc;
  fc.reputations.assign(n_sensors, 1.0);
  fc.identified.assign(n_sensors, 0);
  fc.kappa = kappa;
  fc.eta = eta;
  fc.delta_step = delta_step;
  fc.rule = rule;
  return fc;
}

std::size_t FcState::identified_count() const {
  return static_cast<std::size_t>(std::accumulate(identified.begin(), identified.end(), 0));
}

void reputation_update(FcState& fc, const BeliefSnapshot& snapshot, const Topology& topo) {
  if (fc.reputations.size() != static_cast<std::size_t>(topo.n_sensors))
    throw std::invalid_argument("reputation_update: FC state and topology disagree on N");
  std::vector<int> honest_votes(topo.n_sensors, 0);
  std::vector<std::vector<char>> seen(topo.n_sensors);
  for (int i = 0; i < topo.n_sensors; ++i) seen[i].assign(topo.humans_of_sensor[i].size(), 0);
  for (const EdgeBelief& e : snapshot.edges) {
    if (e.sensor < 0 || e.sensor >= topo.n_sensors)
      throw std::invalid_argument("reputation_update: sensor index out of range");
    const auto& hs = topo.humans_of_sensor[e.sensor];
    const auto it = std::lower_bound(hs.begin(), hs.end(), e.human);
    if (it == hs.end() || *it != e.human)
      throw std::invalid_argument("reputation_update: belief for a non-edge (" +
                                  std::to_string(e.human) + ", " + std::to_string(e.sensor) + ")");
    char& mark = seen[e.sensor][it - hs.begin()];
    if (mark)
      throw std::invalid_argument("reputation_update: duplicate belief for edge (" +
                                  std::to_string(e.human) + ", " + std::to_string(e.sensor) + ")");
    mark = 1;
    if (indicator(e.w) > 0) ++honest_votes[e.sensor];
  }
  for (int i = 0; i < topo.n_sensors; ++i) {
    const int degree = static_cast<int>(topo.humans_of_sensor[i].size());
    if (std::find(seen[i].begin(), seen[i].end(), 0) != seen[i].end())
      throw std::invalid_argument("reputation_update: snapshot misses edges of sensor " +
                                  std::to_string(i));
    fc.reputations[i] += reputation_increment(honest_votes[i], degree, fc.delta_step, fc.rule);
  }
  identify(fc);
}

std::vector<int> identify(FcState& fc) {
  std::vector<int> out;
  for (std::size_t i = 0; i < fc.reputations.size(); ++i) {
    if (fc.reputations[i] < fc.eta) fc.identified[i] = 1;
    if (fc.identified[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace byzfuse
