// ============================================================================
// harness.hpp -- windowed trial execution and Monte Carlo aggregation
//
// A trial fixes the topology, the Byzantine identities (round(alpha * N)
// sensors chosen uniformly) and every human's threshold, then runs
// `windows` consecutive windows. Each window redraws the hypothesis, resets
// human beliefs and priors, runs T belief-updating steps, lets the fusion
// center vote and updates reputations. Reputations and the identified set
// persist across the windows of a trial.
//
// Trials are independent; trial k draws from make_stream(seed, k). Results
// are reduced in trial order, so they do not depend on the worker count.
// ============================================================================
#pragma once
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "byzfuse/belief.hpp"
#include "byzfuse/config.hpp"
#include "byzfuse/fusion.hpp"
#include "byzfuse/rng.hpp"
#include "byzfuse/sideinfo.hpp"
#include "byzfuse/topology.hpp"

namespace byzfuse {

/// Mean with a 95% confidence half-width over n samples.
struct Estimate {
  double mean = 0.0;
  double ci95 = 0.0;
  std::size_t n = 0;
};

/// Binomial proportion with a normal-approximation half-width.
Estimate binomial_estimate(std::size_t successes, std::size_t n);
/// Sample mean from running sums, half-width 1.96 * s / sqrt(n).
Estimate sample_estimate(double sum, double sum_sq, std::size_t n);

/// Quantities derived once per run from the config.
struct RunContext {
  SignalModel model;
  OperatingPoint sensor_op;  ///< clamped
  ConditionalReportRates rates;
  OperatingPoint human_avg;  ///< (beta_bar, gamma_bar)
  double alpha_e = 0.5;
  double kappa = 10.0;
  const ExperimentConfig* config = nullptr;

  static RunContext from_config(const ExperimentConfig& cfg);
};

struct World {
  Topology topology;
  std::vector<Bit> byzantine;
  std::vector<HumanState> humans;
  FcState fc;
};

/// Build one trial's world from its random stream.
World make_world(const RunContext& ctx, Rng& rng);

struct WindowRecord {
  Bit hypothesis = 0;
  Bit fc_decision = 0;
  Bit cv_decision = 0;
  Bit mr_decision = 0;
  Bit mrh_decision = 0;
  std::vector<int> correct_humans;  ///< per step, length T
  int n_humans = 0;
  int n_sensors = 0;
  int n_byzantine = 0;
  int identified_byzantine = 0;  ///< after this window's reputation update
  int identified_honest = 0;

  double fraction_correct(std::size_t step) const {
    return static_cast<double>(correct_humans.at(step)) / n_humans;
  }
};

/// Run T steps with a fixed hypothesis. Draw order per step: every sensor
/// observation, then every human observation. The baselines vote on the
/// bits of the final step, the same draws the fusion center sees.
WindowRecord run_window(World& world, const RunContext& ctx, Bit hypothesis, Rng& rng);

struct SideInfoMetrics {
  double beta_side = 0.0;
  double gamma_side = 0.0;
  OperatingPoint human_avg;
  SideInfoErrors analytic;
  Estimate mc_none;
  Estimate mc_or;
  Estimate mc_and;
  std::size_t draws = 0;
};

struct TrialMetrics {
  std::size_t trials = 0;
  std::size_t windows = 0;  ///< total over all trials; 0 when no network run
  Estimate fc_error;
  Estimate cv_error;
  Estimate mr_error;
  Estimate mrh_error;
  std::vector<Estimate> frac_correct;  ///< per iteration, length T
  Estimate correct_gain;               ///< per-window frac(T) - frac(1)
  Estimate identified_ratio;           ///< identified Byzantine / N, end of trial
  Estimate false_identification_ratio; ///< identified honest / honest, end of trial
  Estimate unidentified_byzantine_ratio;
  std::optional<SideInfoMetrics> side;
};

struct RunOptions {
  unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Monte Carlo of the side-information rules at the config's
/// (beta_side, gamma_side); draws from stream 2^63 of the seed.
SideInfoMetrics run_side_info(const ExperimentConfig& cfg, const OperatingPoint& human_avg);

/// Validate, then run every trial (if simulate_network) and the side-info
/// evaluation (analytic always, Monte Carlo when side_info_draws > 0).
TrialMetrics run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

struct SweepRow {
  double value = 0.0;
  ExperimentConfig config;
  TrialMetrics metrics;
};

/// One aggregated row per value, all rows sharing the seed. Sweeping
/// beta_side or gamma_side evaluates side information only (the network
/// simulation does not depend on them). Unknown axes throw ConfigError.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg, std::string_view axis,
                            std::span<const double> values, const RunOptions& opts = {});

bool is_side_info_axis(std::string_view axis);

}  // namespace byzfuse
