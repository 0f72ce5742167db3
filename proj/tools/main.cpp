#include "wingpitch/config.hpp"
#include "wingpitch/scenario.hpp"
#include "wingpitch/selfcheck.hpp"
#include "wingpitch/snapshot.hpp"
#include "wingpitch/telemetry.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using namespace wingpitch;

std::optional<ScenarioKind> parse_kind(const std::string& name) {
  if (name == "nominal_learning") return ScenarioKind::nominal_learning;
  if (name == "disturbance_rejection") return ScenarioKind::disturbance_rejection;
  if (name == "frozen_policy") return ScenarioKind::frozen_policy;
  return std::nullopt;
}

void print_summary(std::ostream& out, const RunSummary& s) {
  char buf[64];
  const auto field = [&](const char* name, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << name << " = " << buf << '\n';
  };
  field("abs_avg_error_deg", s.abs_avg_error_deg);
  field("max_abs_error_deg", s.max_abs_error_deg);
  out << "converged = " << (s.converged ? "true" : "false") << '\n';
  field("convergence_time_s", s.convergence_time_s);
  field("accumulated_cost_tracking", s.accumulated_cost_tracking);
  field("accumulated_cost_stabilizing", s.accumulated_cost_stabilizing);
  field("max_weight_norm", s.max_weight_norm);
  field("max_critic_asymmetry", s.max_critic_asymmetry);
  out << "steps = " << s.steps << '\n'
      << "faults = " << s.faults << '\n'
      << "sensor_spikes = " << s.sensor_spikes << '\n'
      << "warmup_excluded_s = " << s.warmup_s << '\n';
}

int run_command(const std::string& scenario_name, const std::string& config_path,
                std::optional<std::uint64_t> seed, const std::string& out_dir,
                const std::string& snapshot_path, const std::string& mode_name,
                bool gnuplot) {
  const auto kind = parse_kind(scenario_name);
  if (!kind) {
    std::cerr << "unknown scenario '" << scenario_name
              << "' (expected nominal_learning|disturbance_rejection|"
                 "frozen_policy)\n";
    return 1;
  }

  ScenarioSpec spec = default_scenario(*kind);
  if (!config_path.empty()) {
    spec = apply_config(KeyValueConfig::parse_file(config_path), spec);
  }
  if (seed) spec.seed = *seed;
  if (!snapshot_path.empty()) spec.snapshot_path = snapshot_path;
  if (!mode_name.empty()) {
    KeyValueConfig override = KeyValueConfig::parse_text("mode = " + mode_name,
                                                         "--mode");
    spec = apply_config(override, spec);
  }
  spec.validate();

  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);

  const RunResult result = run_scenario(spec);

  const fs::path csv = dir / (scenario_name + "_telemetry.csv");
  const fs::path weights = dir / (scenario_name + "_weights.txt");
  const fs::path summary_path = dir / (scenario_name + "_summary.txt");
  export_telemetry(result.records, csv);
  save_weights(result.summary.final_weights, weights);
  {
    std::ofstream sf(summary_path);
    if (!sf) {
      std::cerr << "cannot write " << summary_path << '\n';
      return 1;
    }
    print_summary(sf, result.summary);
  }
  if (gnuplot) {
    write_gnuplot_script(csv, dir / (scenario_name + "_telemetry.gp"));
  }

  std::cout << "scenario = " << scenario_name << "\nseed = " << spec.seed << '\n';
  print_summary(std::cout, result.summary);
  std::cout << "telemetry = " << csv.string() << '\n'
            << "weights = " << weights.string() << '\n';
  return 0;
}

int metrics_command(const std::string& csv_path, double warmup_s) {
  const auto records = parse_telemetry(csv_path);
  const RunSummary s = compute_metrics(records, warmup_s);
  print_summary(std::cout, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wingpitch: guided value-iteration pitch tracking testbed"};
  app.require_subcommand(0, 1);

  bool dump_defaults = false;
  std::string dump_kind = "nominal_learning";
  app.add_flag("--dump-default-config", dump_defaults,
               "print the built-in scenario defaults and exit");
  app.add_option("--scenario", dump_kind,
                 "scenario whose defaults --dump-default-config prints");

  auto* run = app.add_subcommand("run", "simulate one scenario end to end");
  std::string scenario_name;
  std::string config_path;
  std::string out_dir = ".";
  std::string snapshot_path;
  std::string mode_name;
  std::uint64_t seed_value = 0;
  bool gnuplot = false;
  run->add_option("scenario", scenario_name,
                  "nominal_learning | disturbance_rejection | frozen_policy")
      ->required();
  run->add_option("--config", config_path, "scenario configuration file");
  auto* seed_opt = run->add_option("--seed", seed_value, "rng seed override");
  run->add_option("--out", out_dir, "output directory (default: .)");
  run->add_option("--snapshot", snapshot_path, "initial weight snapshot file");
  run->add_option("--mode", mode_name, "learning | actor-frozen | frozen");
  run->add_flag("--gnuplot", gnuplot, "also emit a companion plot script");

  auto* check = app.add_subcommand(
      "check", "run the recursion/gradient invariant suite (exit 0/1)");

  auto* metrics = app.add_subcommand(
      "metrics", "recompute summary metrics from a telemetry CSV");
  std::string metrics_csv;
  double metrics_warmup = 2.0;
  metrics->add_option("csv", metrics_csv, "telemetry file")->required();
  metrics->add_option("--warmup", metrics_warmup,
                      "seconds to exclude from the averages");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dump_defaults) {
      const auto kind = parse_kind(dump_kind);
      if (!kind) {
        std::cerr << "unknown scenario '" << dump_kind << "'\n";
        return 1;
      }
      std::cout << default_config_text(*kind);
      return 0;
    }
    if (*run) {
      return run_command(scenario_name, config_path,
                         seed_opt->count() ? std::optional(seed_value)
                                           : std::nullopt,
                         out_dir, snapshot_path, mode_name, gnuplot);
    }
    if (*check) {
      return run_self_checks(std::cout) ? 0 : 1;
    }
    if (*metrics) {
      return metrics_command(metrics_csv, metrics_warmup);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::cout << app.help();
  return 0;
}
