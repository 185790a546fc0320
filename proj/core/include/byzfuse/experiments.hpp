// ============================================================================
// experiments.hpp -- named experiment presets and their result tables
//
//  table1  error of CV / MR / MRH / proposed vs alpha, alpha known
//  table2  same with alpha_e = 0.5 standing in for the unknown alpha
//  fig2    fraction of correct humans per iteration, alpha known
//  fig4    same for alpha in {0.1, 0.9} against alpha_e in {0.3, 0.5, 0.7}
//  fig6    identified-Byzantine ratio vs alpha, known and alpha_e = 0.5
//  fig7    side-information error probabilities vs beta_side per gamma_side
//  custom  the config as given, swept over sweep_axis when set
//
// A sweep_axis of "alpha" (or "gamma_side" for fig7) in the config replaces
// the preset's default values.
// ============================================================================
#pragma once
#include <optional>
#include <string>
#include <vector>

#include "byzfuse/config.hpp"
#include "byzfuse/harness.hpp"
#include "byzfuse/report.hpp"

namespace byzfuse {

enum class Subcommand { table1, table2, fig2, fig4, fig6, fig7, custom };

std::string to_string(Subcommand s);
/// Throws std::invalid_argument for unknown names.
Subcommand subcommand_from_string(const std::string& name);
const std::vector<std::string>& subcommand_names();

/// Config layered under the user's file and overrides for a subcommand.
ExperimentConfig subcommand_preset(Subcommand s);

struct SubcommandResult {
  Table results;                ///< one row per sweep point
  std::optional<Table> series;  ///< long format (x, series, y, ci) for figs
};

SubcommandResult run_subcommand(Subcommand s, const ExperimentConfig& cfg,
                                const RunOptions& opts = {});

/// Full per-row schema for network runs; frac_correct columns span max_t.
Table network_table(const std::vector<SweepRow>& rows, const std::string& axis,
                    const std::string& hash);
Table side_info_table(const std::vector<SweepRow>& rows, const std::string& hash);

}  // namespace byzfuse
