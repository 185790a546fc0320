// ============================================================================
// config.hpp -- experiment configuration: defaults, validation, canonical
// JSON form and its digest
//
// A config document is a flat JSON object. Every key is optional; absent keys
// keep their defaults (N = 60, M = 20, T = 10, delta = 0.03, kappa' = 1,
// kappa = M/2, eta = 0.2, tau = 2, window prior 0.5, mu1 = 4, mu0 = 0,
// var = 2, human thresholds N(2, 2^2)).
// ============================================================================
#pragma once
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "byzfuse/fusion.hpp"
#include "byzfuse/model.hpp"
#include "byzfuse/topology.hpp"

namespace byzfuse {

/// Which human bits the MR / MRH baselines vote with: the raw b_m or the
/// belief-updated d_m.
enum class BaselineHumanBits { raw, belief };

/// When each human's LR threshold xi is drawn: once per trial, or afresh at
/// the start of every window.
enum class ThresholdDraw { trial, window };

struct ExperimentConfig {
  int n_sensors = 60;      // "N"
  int n_humans = 20;       // "M"
  int window_length = 10;  // "T"

  double alpha = 0.1;
  std::optional<double> alpha_e;  ///< unset: the true alpha is known
  double delta_step = 0.03;
  double eta = 0.2;
  std::optional<double> kappa;  ///< unset: M / 2
  double kappa_prime = 1.0;

  SignalModel model;
  HumanThresholdDist human_dist;
  double sensor_tau = 2.0;
  double window_prior = 0.5;
  bool allow_quadrature = false;

  TopologySpec topology;
  ReputationRule reputation_rule = ReputationRule::signed_vote;
  BaselineHumanBits baseline_human_bits = BaselineHumanBits::raw;
  bool exclude_identified = true;
  ThresholdDraw threshold_draw = ThresholdDraw::window;

  int trials = 100;
  int windows = 100;  ///< windows per trial
  std::uint64_t seed = 1;
  bool simulate_network = true;

  double beta_side = 0.0;
  double gamma_side = 0.0;
  int side_info_draws = 0;

  std::string sweep_axis;  ///< empty: no sweep
  std::vector<double> sweep_values;

  double effective_alpha_e() const { return alpha_e.value_or(alpha); }
  double effective_kappa() const { return kappa.value_or(n_humans / 2.0); }

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Every recognised config key, sorted.
const std::vector<std::string>& config_keys();

/// Keys that take a single number and can therefore be swept.
bool is_numeric_key(std::string_view key);

/// Apply a JSON document (flat object) on top of `base`. Unknown keys and
/// wrongly typed values throw ConfigError. The result is not validated.
ExperimentConfig apply_config_text(std::string_view json_text, ExperimentConfig base = {});

/// Apply one "key=value" override. Values are read as JSON when possible,
/// otherwise as strings; sweep_values also accepts "0.1,0.5,0.9".
void apply_override(ExperimentConfig& cfg, std::string_view assignment);

/// Set a numeric key (sweep axes).
void set_numeric(ExperimentConfig& cfg, std::string_view key, double value);

/// Read a config file (empty path: defaults only), apply overrides in order
/// and validate.
ExperimentConfig parse_config(const std::filesystem::path& path,
                              const std::vector<std::string>& overrides = {},
                              ExperimentConfig base = {});

/// Canonical JSON: every key, sorted, numbers printed round-trip exact.
std::string emit_config(const ExperimentConfig& cfg);

/// 16 hex digits of FNV-1a/64 over emit_config(cfg).
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace byzfuse
