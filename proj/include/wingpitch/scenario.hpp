#pragma once

#include "wingpitch/controller.hpp"
#include "wingpitch/plant.hpp"
#include "wingpitch/snapshot.hpp"
#include "wingpitch/telemetry.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wingpitch {

enum class ScenarioKind { nominal_learning, disturbance_rejection, frozen_policy };

const char* to_string(ScenarioKind kind);
const char* to_string(ControllerMode mode);

struct ModeScheduleEntry {
  double t_s = 0.0;
  ControllerMode mode = ControllerMode::learning;
};

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::nominal_learning;
  double episode_s = 150.0;
  double warmup_s = 2.0;      // excluded from the error metrics
  std::uint64_t seed = 1;
  double physics_dt_s = 0.005;  // inner integration step

  PlantParams plant;
  SensorParams sensor;
  DisturbanceProfile disturbance;
  ControllerConfig controller;
  ReferenceSignal reference;

  std::vector<ModeScheduleEntry> mode_schedule;  // applied by timestamp
  std::string snapshot_path;  // initial weights; required for frozen_policy

  double initial_theta_deg = 0.0;
  double initial_rate_dps = 0.0;

  // Advisory convergence reporting.
  int convergence_window = 200;        // samples (10 s at 20 Hz)
  double convergence_err_tol_deg = 1.0;
  double convergence_step_tol = 5e-3;

  void validate() const;  // throws std::invalid_argument with a description
};

ScenarioSpec default_scenario(ScenarioKind kind);

struct RunSummary {
  double abs_avg_error_deg = 0.0;
  double max_abs_error_deg = 0.0;
  bool converged = false;
  double convergence_time_s = -1.0;  // negative when never reached
  std::vector<double> value_tracking_series;
  std::vector<double> value_stabilizing_series;
  double accumulated_cost_tracking = 0.0;
  double accumulated_cost_stabilizing = 0.0;
  WeightSnapshot final_weights;
  double max_weight_norm = 0.0;  // running max over the episode
  std::size_t steps = 0;
  std::size_t faults = 0;
  std::size_t sensor_spikes = 0;
  double max_critic_asymmetry = 0.0;
  double warmup_s = 0.0;
};

struct RunResult {
  RunSummary summary;
  std::vector<StepRecord> records;
};

// Full closed loop: 20 Hz sense/control over an inner fixed-step integration,
// deterministic under a fixed seed.
RunResult run_scenario(const ScenarioSpec& spec);

// Error metrics and value series recomputed from records alone (the fields a
// telemetry file can also provide). Rows before warmup_s and non-finite rows
// are excluded from the averages.
RunSummary compute_metrics(std::span<const StepRecord> records, double warmup_s);

// Companion plot script for an exported telemetry file.
void write_gnuplot_script(const std::filesystem::path& csv_path,
                          const std::filesystem::path& script_path);

}  // namespace wingpitch
