// ============================================================================
// byzfuse_main.cpp -- command-line driver
//
// Usage:
//   byzfuse <table1|table2|fig2|fig4|fig6|fig7|custom>
//           [--config file.json] [--set key=value]... [--seed N] [--trials N]
//           [--out DIR] [--pretty]
//
// Config layering: subcommand preset < --config file < --set < --seed/--trials.
// BYZFUSE_THREADS caps the worker count (0 or unset: all cores).
// ============================================================================
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "byzfuse/config.hpp"
#include "byzfuse/experiments.hpp"
#include "byzfuse/report.hpp"

namespace {

unsigned threads_from_env() {
  const char* v = std::getenv("BYZFUSE_THREADS");
  if (!v || !*v) return 0;
  try {
    const long n = std::stol(v);
    return n > 0 ? static_cast<unsigned>(n) : 0u;
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring non-numeric BYZFUSE_THREADS='" << v << "'\n";
    return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine-resilient human-machine decision fusion simulator"};
  std::string subcommand;
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out_dir = "results";
  bool pretty = false;

  app.add_option("subcommand", subcommand, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(byzfuse::subcommand_names()));
  app.add_option("--config", config_path, "JSON config file (flat object)");
  app.add_option("--set", overrides, "Override one key, key=value (repeatable)");
  app.add_option("--seed", seed, "Master RNG seed");
  app.add_option("--trials", trials, "Number of independent trials");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_flag("--pretty", pretty, "Also print a human-readable table");
  CLI11_PARSE(app, argc, argv);

  try {
    const byzfuse::Subcommand sub = byzfuse::subcommand_from_string(subcommand);
    if (seed) overrides.push_back("seed=" + std::to_string(*seed));
    if (trials) overrides.push_back("trials=" + std::to_string(*trials));
    const byzfuse::ExperimentConfig cfg =
        byzfuse::parse_config(config_path, overrides, byzfuse::subcommand_preset(sub));

    byzfuse::RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.config_hash = byzfuse::config_hash(cfg);
    manifest.config_json = byzfuse::emit_config(cfg);
    manifest.seed = cfg.seed;
    manifest.version = byzfuse::artifact_version();
    manifest.started_utc = byzfuse::utc_timestamp();

    byzfuse::OutputSet outputs(out_dir);
    const byzfuse::SubcommandResult result =
        byzfuse::run_subcommand(sub, cfg, {threads_from_env()});
    outputs.add(subcommand + ".csv", byzfuse::to_csv(result.results));
    if (result.series) outputs.add(subcommand + "_series.csv", byzfuse::to_csv(*result.series));

    manifest.finished_utc = byzfuse::utc_timestamp();
    for (const auto& name : outputs.names()) manifest.outputs.push_back((outputs.dir() / name).string());
    const std::string manifest_name = subcommand + "_manifest.json";
    manifest.outputs.push_back((outputs.dir() / manifest_name).string());
    outputs.add(manifest_name, byzfuse::to_json(manifest));
    outputs.commit();

    if (pretty) byzfuse::write_pretty(std::cout, result.results);
    std::cerr << subcommand << ": wrote " << manifest.outputs.size() << " files to " << out_dir
              << " (config " << manifest.config_hash << ")\n";
    return 0;
  } catch (const byzfuse::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
