// ============================================================================
// experiments.cpp -- named experiment presets and their result tables
// ============================================================================
#include "byzfuse/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace byzfuse {

namespace {

const std::vector<double> kTableAlphas{0.1, 0.5, 0.9};
const std::vector<double> kFig6Alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
const std::vector<double> kFig4Alphas{0.1, 0.9};
const std::vector<double> kFig4AlphaEs{0.3, 0.5, 0.7};
const std::vector<double> kFig7Gammas{0.1, 0.3, 0.5};
constexpr double kUnknownAlphaE = 0.5;

std::string label(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", name, v);
  return buf;
}

std::vector<double> axis_values(const ExperimentConfig& cfg, const char* axis,
                                const std::vector<double>& fallback) {
  if (cfg.sweep_axis == axis && !cfg.sweep_values.empty()) return cfg.sweep_values;
  return fallback;
}

Cell opt_cell(const std::optional<double>& v) {
  return v ? Cell{*v} : Cell{};
}

std::vector<double> beta_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(k / 20.0);
  return g;
}

void append_estimate(std::vector<Cell>& row, const Estimate& e) {
  row.emplace_back(e.mean);
  row.emplace_back(e.ci95);
}

ExperimentConfig base_for_rows(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.sweep_axis.clear();
  c.sweep_values.clear();
  return c;
}

SubcommandResult run_table(const ExperimentConfig& cfg, bool known, const RunOptions& opts) {
  ExperimentConfig base = base_for_rows(cfg);
  if (known)
    base.alpha_e.reset();
  else if (!base.alpha_e)
    base.alpha_e = kUnknownAlphaE;
  const auto rows = sweep(base, "alpha", axis_values(cfg, "alpha", kTableAlphas), opts);
  const std::string hash = config_hash(cfg);
  Table t;
  t.header = {"alpha", "alpha_e", "cv", "cv_ci95", "mr", "mr_ci95", "mrh", "mrh_ci95",
              "proposed", "proposed_ci95", "windows", "config_hash"};
  for (const auto& r : rows) {
    std::vector<Cell> row{r.value, r.config.effective_alpha_e()};
    append_estimate(row, r.metrics.cv_error);
    append_estimate(row, r.metrics.mr_error);
    append_estimate(row, r.metrics.mrh_error);
    append_estimate(row, r.metrics.fc_error);
    row.emplace_back(static_cast<long long>(r.metrics.windows));
    row.emplace_back(hash);
    t.rows.push_back(std::move(row));
  }
  return {std::move(t), std::nullopt};
}

Table iteration_series(const std::vector<std::pair<std::string, const TrialMetrics*>>& runs,
                       const std::string& hash) {
  Table s;
  s.header = {"x", "series", "y", "ci", "config_hash"};
  for (const auto& [name, m] : runs)
    for (std::size_t t = 0; t < m->frac_correct.size(); ++t)
      s.rows.push_back({static_cast<long long>(t + 1), name, m->frac_correct[t].mean,
                        m->frac_correct[t].ci95, hash});
  return s;
}

SubcommandResult run_fig2(const ExperimentConfig& cfg, const RunOptions& opts) {
  ExperimentConfig base = base_for_rows(cfg);
  base.alpha_e.reset();
  const auto rows = sweep(base, "alpha", axis_values(cfg, "alpha", kTableAlphas), opts);
  const std::string hash = config_hash(cfg);
  std::vector<std::pair<std::string, const TrialMetrics*>> runs;
  for (const auto& r : rows) runs.emplace_back(label("alpha", r.value), &r.metrics);
  return {network_table(rows, "alpha", hash), iteration_series(runs, hash)};
}

SubcommandResult run_fig4(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::string hash = config_hash(cfg);
  std::vector<SweepRow> all;
  for (double alpha : axis_values(cfg, "alpha", kFig4Alphas)) {
    ExperimentConfig base = base_for_rows(cfg);
    base.alpha = alpha;
    auto rows = sweep(base, "alpha_e", kFig4AlphaEs, opts);
    for (auto& r : rows) all.push_back(std::move(r));
  }
  std::vector<std::pair<std::string, const TrialMetrics*>> runs;
  for (const auto& r : all)
    runs.emplace_back(label("alpha", r.config.alpha) + "," + label("alpha_e", r.value), &r.metrics);
  return {network_table(all, "alpha_e", hash), iteration_series(runs, hash)};
}

SubcommandResult run_fig6(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::string hash = config_hash(cfg);
  const auto alphas = axis_values(cfg, "alpha", kFig6Alphas);
  ExperimentConfig known = base_for_rows(cfg);
  known.alpha_e.reset();
  ExperimentConfig unknown = base_for_rows(cfg);
  unknown.alpha_e = cfg.alpha_e.value_or(kUnknownAlphaE);
  auto rows = sweep(known, "alpha", alphas, opts);
  auto rows_unknown = sweep(unknown, "alpha", alphas, opts);
  Table series;
  series.header = {"x", "series", "y", "ci", "config_hash"};
  const std::string unknown_name = label("alpha_e", *unknown.alpha_e);
  auto emit = [&](const std::vector<SweepRow>& rs, const std::string& name) {
    for (const auto& r : rs) {
      series.rows.push_back({r.value, "identified:" + name, r.metrics.identified_ratio.mean,
                             r.metrics.identified_ratio.ci95, hash});
      series.rows.push_back({r.value, "false_identification:" + name,
                             r.metrics.false_identification_ratio.mean,
                             r.metrics.false_identification_ratio.ci95, hash});
    }
  };
  emit(rows, "known");
  emit(rows_unknown, unknown_name);
  for (auto& r : rows_unknown) rows.push_back(std::move(r));
  return {network_table(rows, "alpha", hash), std::move(series)};
}

SubcommandResult run_fig7(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::string hash = config_hash(cfg);
  std::vector<SweepRow> all;
  for (double g : axis_values(cfg, "gamma_side", kFig7Gammas)) {
    ExperimentConfig base = base_for_rows(cfg);
    base.gamma_side = g;
    const auto grid = beta_grid();
    auto rows = sweep(base, "beta_side", grid, opts);
    for (auto& r : rows) all.push_back(std::move(r));
  }
  Table series;
  series.header = {"x", "series", "y", "ci", "config_hash"};
  for (const auto& r : all) {
    const SideInfoMetrics& s = *r.metrics.side;
    const std::string tag = "@" + label("gamma_side", s.gamma_side);
    series.rows.push_back({s.beta_side, "none" + tag, s.analytic.none, 0.0, hash});
    series.rows.push_back({s.beta_side, "or" + tag, s.analytic.or_op, 0.0, hash});
    series.rows.push_back({s.beta_side, "and" + tag, s.analytic.and_op, 0.0, hash});
    if (s.draws > 0) {
      series.rows.push_back({s.beta_side, "mc_none" + tag, s.mc_none.mean, s.mc_none.ci95, hash});
      series.rows.push_back({s.beta_side, "mc_or" + tag, s.mc_or.mean, s.mc_or.ci95, hash});
      series.rows.push_back({s.beta_side, "mc_and" + tag, s.mc_and.mean, s.mc_and.ci95, hash});
    }
  }
  return {side_info_table(all, hash), std::move(series)};
}

SubcommandResult run_custom(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::string hash = config_hash(cfg);
  std::vector<SweepRow> rows;
  std::string axis = cfg.sweep_axis;
  if (axis.empty()) {
    SweepRow row;
    row.config = cfg;
    row.metrics = run_experiment(cfg, opts);
    rows.push_back(std::move(row));
  } else {
    rows = sweep(base_for_rows(cfg), axis, cfg.sweep_values, opts);
  }
  const bool side_only = is_side_info_axis(axis) || !cfg.simulate_network;
  if (side_only) return {side_info_table(rows, hash), std::nullopt};
  return {network_table(rows, axis, hash), std::nullopt};
}

}  // namespace

std::string to_string(Subcommand s) {
  return subcommand_names().at(static_cast<std::size_t>(s));
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"table1", "table2", "fig2", "fig4",
                                              "fig6",   "fig7",   "custom"};
  return names;
}

Subcommand subcommand_from_string(const std::string& name) {
  const auto& names = subcommand_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("unknown subcommand '" + name + "'");
  return static_cast<Subcommand>(it - names.begin());
}

ExperimentConfig subcommand_preset(Subcommand s) {
  ExperimentConfig c;
  switch (s) {
    case Subcommand::fig6:
      c.topology.kind = TopologyKind::random_bipartite;
      c.topology.sensor_degree = 3;
      c.windows = 200;
      c.trials = 20;
      break;
    case Subcommand::fig7:
      c.side_info_draws = 100000;
      c.simulate_network = false;
      break;
    default:
      break;
  }
  return c;
}

SubcommandResult run_subcommand(Subcommand s, const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  switch (s) {
    case Subcommand::table1: return run_table(cfg, true, opts);
    case Subcommand::table2: return run_table(cfg, false, opts);
    case Subcommand::fig2: return run_fig2(cfg, opts);
    case Subcommand::fig4: return run_fig4(cfg, opts);
    case Subcommand::fig6: return run_fig6(cfg, opts);
    case Subcommand::fig7: return run_fig7(cfg, opts);
    case Subcommand::custom: return run_custom(cfg, opts);
  }
  throw std::logic_error("unhandled subcommand");
}

Table network_table(const std::vector<SweepRow>& rows, const std::string& axis,
                    const std::string& hash) {
  std::size_t max_t = 0;
  for (const auto& r : rows) max_t = std::max(max_t, r.metrics.frac_correct.size());
  Table t;
  t.header = {"axis", "value", "alpha", "alpha_e", "windows"};
  for (const char* m : {"fc_error", "cv_error", "mr_error", "mrh_error", "identified_ratio",
                        "false_identification_ratio", "unidentified_byzantine_ratio",
                        "correct_gain"}) {
    t.header.emplace_back(m);
    t.header.emplace_back(std::string(m) + "_ci95");
  }
  for (std::size_t k = 1; k <= max_t; ++k) {
    t.header.push_back("frac_correct_" + std::to_string(k));
    t.header.push_back("frac_correct_" + std::to_string(k) + "_ci95");
  }
  t.header.emplace_back("config_hash");
  for (const auto& r : rows) {
    const TrialMetrics& m = r.metrics;
    std::vector<Cell> row{axis.empty() ? Cell{} : Cell{axis}, axis.empty() ? Cell{} : Cell{r.value},
                          r.config.alpha, opt_cell(r.config.alpha_e),
                          static_cast<long long>(m.windows)};
    for (const Estimate* e : {&m.fc_error, &m.cv_error, &m.mr_error, &m.mrh_error,
                              &m.identified_ratio, &m.false_identification_ratio,
                              &m.unidentified_byzantine_ratio, &m.correct_gain})
      append_estimate(row, *e);
    for (std::size_t k = 0; k < max_t; ++k) {
      if (k < m.frac_correct.size()) {
        append_estimate(row, m.frac_correct[k]);
      } else {
        row.emplace_back();
        row.emplace_back();
      }
    }
    row.emplace_back(hash);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table side_info_table(const std::vector<SweepRow>& rows, const std::string& hash) {
  Table t;
  t.header = {"beta_side", "gamma_side", "beta_bar", "gamma_bar", "pe_none", "pe_or",
              "pe_and",    "best_op",    "mc_none",  "mc_none_ci95", "mc_or", "mc_or_ci95",
              "mc_and",    "mc_and_ci95", "draws",   "config_hash"};
  for (const auto& r : rows) {
    const SideInfoMetrics& s = *r.metrics.side;
    std::vector<Cell> row{s.beta_side,       s.gamma_side,      s.human_avg.pd,
                          s.human_avg.pf,    s.analytic.none,   s.analytic.or_op,
                          s.analytic.and_op, s.analytic.best};
    if (s.draws > 0) {
      append_estimate(row, s.mc_none);
      append_estimate(row, s.mc_or);
      append_estimate(row, s.mc_and);
    } else {
      for (int k = 0; k < 6; ++k) row.emplace_back();
    }
    row.emplace_back(static_cast<long long>(s.draws));
    row.emplace_back(hash);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace byzfuse
