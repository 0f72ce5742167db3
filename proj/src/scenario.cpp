#include "wingpitch/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

namespace wingpitch {

namespace {

// splitmix64; decorrelates the per-module rng streams from one scenario seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::nominal_learning: return "nominal_learning";
    case ScenarioKind::disturbance_rejection: return "disturbance_rejection";
    case ScenarioKind::frozen_policy: return "frozen_policy";
  }
  return "?";
}

const char* to_string(ControllerMode mode) {
  switch (mode) {
    case ControllerMode::learning: return "learning";
    case ControllerMode::actor_only_frozen: return "actor-frozen";
    case ControllerMode::fully_frozen: return "frozen";
  }
  return "?";
}

void ScenarioSpec::validate() const {
  if (!(episode_s > 0.0)) {
    throw std::invalid_argument("scenario: episode length must be positive");
  }
  if (warmup_s < 0.0 || warmup_s >= episode_s) {
    throw std::invalid_argument("scenario: warm-up must lie inside the episode");
  }
  if (!(physics_dt_s > 0.0)) {
    throw std::invalid_argument("scenario: physics step must be positive");
  }
  const double ratio = controller.dt_s / physics_dt_s;
  if (ratio < 1.0 - 1e-9 ||
      std::abs(ratio - std::round(ratio)) > 1e-9) {
    throw std::invalid_argument(
        "scenario: control period must be an integer multiple of the physics step");
  }
  if (std::abs(controller.dt_s * sensor.sample_rate_hz - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "scenario: sensor rate must match the control period");
  }
  sensor.validate();
  controller.tracking.validate();
  controller.stabilizing.validate();
  if (!(plant.inertia > 0.0) || plant.damping < 0.0 || plant.restoring < 0.0) {
    throw std::invalid_argument("scenario: invalid plant parameters");
  }
  if (kind == ScenarioKind::frozen_policy && snapshot_path.empty()) {
    throw std::invalid_argument(
        "scenario: frozen_policy requires a weight snapshot path");
  }
  if (kind == ScenarioKind::disturbance_rejection) {
    if (disturbance.waveform == DisturbanceWaveform::none ||
        !(disturbance.duration_s > 0.0) || disturbance.amplitude == 0.0) {
      throw std::invalid_argument(
          "scenario: disturbance_rejection requires a non-empty disturbance "
          "profile");
    }
  }
  if (disturbance.duration_s < 0.0) {
    throw std::invalid_argument("scenario: negative disturbance duration");
  }
  if (mode_schedule.empty()) {
    throw std::invalid_argument("scenario: empty mode schedule");
  }
  if (convergence_window < 2) {
    throw std::invalid_argument("scenario: convergence window must be >= 2");
  }
}

ScenarioSpec default_scenario(ScenarioKind kind) {
  ScenarioSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ScenarioKind::nominal_learning:
      spec.mode_schedule = {{0.0, ControllerMode::learning}};
      break;
    case ScenarioKind::disturbance_rejection:
      spec.mode_schedule = {{0.0, ControllerMode::learning}};
      spec.disturbance.waveform = DisturbanceWaveform::random_jerk;
      spec.disturbance.start_s = 120.0;
      spec.disturbance.duration_s = 10.0;
      spec.disturbance.amplitude = 1.5;
      break;
    case ScenarioKind::frozen_policy:
      spec.mode_schedule = {{0.0, ControllerMode::fully_frozen}};
      break;
  }
  return spec;
}

RunResult run_scenario(const ScenarioSpec& spec) {
  spec.validate();

  Controller controller(spec.controller);
  if (!spec.snapshot_path.empty()) {
    const WeightSnapshot s = load_weights(spec.snapshot_path);
    controller.tracking().critic.omega = s.critic_tracking;
    controller.tracking().actor.omega = s.actor_tracking;
    controller.stabilizing().critic.omega = s.critic_stabilizing;
    controller.stabilizing().actor.omega = s.actor_stabilizing;
  }

  Sensor sensor(spec.sensor);
  std::mt19937_64 sensor_rng(mix(spec.seed) ^ spec.sensor.rng_seed);
  std::mt19937_64 disturbance_rng(mix(mix(spec.seed)));

  std::vector<ModeScheduleEntry> schedule = spec.mode_schedule;
  std::stable_sort(schedule.begin(), schedule.end(),
                   [](const auto& a, const auto& b) { return a.t_s < b.t_s; });
  std::size_t next_mode = 0;

  PlantState state{spec.initial_theta_deg, spec.initial_rate_dps};
  const int substeps =
      static_cast<int>(std::round(spec.controller.dt_s / spec.physics_dt_s));
  const std::size_t n_steps =
      static_cast<std::size_t>(std::round(spec.episode_s / spec.controller.dt_s));

  RunResult out;
  out.records.reserve(n_steps);
  RunSummary& sum = out.summary;
  sum.warmup_s = spec.warmup_s;

  std::deque<double> err_window;
  std::deque<double> step_window;
  const std::size_t window = static_cast<std::size_t>(spec.convergence_window);

  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * spec.controller.dt_s;

    while (next_mode < schedule.size() && schedule[next_mode].t_s <= t) {
      controller.set_mode(schedule[next_mode].mode);
      ++next_mode;
    }

    const double theta_ref = reference_at(spec.reference, t);
    const double theta_meas = sensor.sample(state.theta_deg, t, sensor_rng);
    StepRecord rec = controller.step(t, theta_ref, theta_meas);
    out.records.push_back(rec);

    // Advance the physics under zero-order-hold control.
    for (int k = 0; k < substeps; ++k) {
      const double tk = t + k * spec.physics_dt_s;
      const double d = disturbance_torque(spec.disturbance, tk, disturbance_rng);
      state = plant_step(spec.plant, state, rec.control.u_f, d, spec.physics_dt_s);
    }

    // Convergence reporting (advisory; the episode always runs to length).
    err_window.push_back(std::abs(theta_meas - theta_ref));
    step_window.push_back(controller.last_critic_step_norm());
    if (err_window.size() > window) err_window.pop_front();
    if (step_window.size() > window) step_window.pop_front();
    if (!sum.converged && err_window.size() == window) {
      const std::vector<double> errs(err_window.begin(), err_window.end());
      const std::vector<double> steps_v(step_window.begin(), step_window.end());
      if (convergence_check(errs, steps_v, spec.convergence_window,
                            spec.convergence_err_tol_deg,
                            spec.convergence_step_tol)) {
        sum.converged = true;
        sum.convergence_time_s = t;
      }
    }

    const double weight_norm =
        controller.tracking().critic.omega.norm() +
        controller.tracking().actor.omega.norm() +
        controller.stabilizing().critic.omega.norm() +
        controller.stabilizing().actor.omega.norm();
    sum.max_weight_norm = std::max(sum.max_weight_norm, weight_norm);

    if (!rec.fault) {
      const double u_e_clamped = std::clamp(rec.control.u_e, -1.0, 1.0);
      const double u_x_clamped = std::clamp(rec.control.u_x, -1.0, 1.0);
      sum.accumulated_cost_tracking += stage_cost(
          spec.controller.tracking, rec.error.as_vector(), u_e_clamped);
      sum.accumulated_cost_stabilizing += stage_cost(
          spec.controller.stabilizing, rec.state.as_vector(), u_x_clamped);
    }
  }

  const RunSummary metrics = compute_metrics(out.records, spec.warmup_s);
  sum.abs_avg_error_deg = metrics.abs_avg_error_deg;
  sum.max_abs_error_deg = metrics.max_abs_error_deg;
  sum.value_tracking_series = metrics.value_tracking_series;
  sum.value_stabilizing_series = metrics.value_stabilizing_series;
  sum.steps = metrics.steps;
  sum.faults = controller.fault_count();
  sum.sensor_spikes = static_cast<std::size_t>(sensor.spike_count());
  sum.max_critic_asymmetry = controller.max_critic_asymmetry();
  sum.final_weights.critic_tracking = controller.tracking().critic.omega;
  sum.final_weights.actor_tracking = controller.tracking().actor.omega;
  sum.final_weights.critic_stabilizing = controller.stabilizing().critic.omega;
  sum.final_weights.actor_stabilizing = controller.stabilizing().actor.omega;
  return out;
}

RunSummary compute_metrics(std::span<const StepRecord> records, double warmup_s) {
  if (records.empty()) {
    throw std::invalid_argument("compute_metrics: empty telemetry");
  }
  RunSummary sum;
  sum.warmup_s = warmup_s;
  sum.steps = records.size();
  sum.value_tracking_series.reserve(records.size());
  sum.value_stabilizing_series.reserve(records.size());

  double abs_sum = 0.0;
  std::size_t counted = 0;
  for (const StepRecord& rec : records) {
    sum.value_tracking_series.push_back(rec.value_tracking);
    sum.value_stabilizing_series.push_back(rec.value_stabilizing);
    if (rec.t_s < warmup_s) continue;
    const double err = rec.theta_ref_deg - rec.theta_meas_deg;
    if (!std::isfinite(err)) continue;
    abs_sum += std::abs(err);
    sum.max_abs_error_deg = std::max(sum.max_abs_error_deg, std::abs(err));
    ++counted;
  }
  if (counted == 0) {
    throw std::invalid_argument(
        "compute_metrics: no finite samples after the warm-up window");
  }
  sum.abs_avg_error_deg = abs_sum / static_cast<double>(counted);
  return sum;
}

void write_gnuplot_script(const std::filesystem::path& csv_path,
                          const std::filesystem::path& script_path) {
  std::ofstream out(script_path);
  if (!out) {
    throw std::runtime_error("gnuplot: cannot open " + script_path.string());
  }
  out << "# gnuplot companion for " << csv_path.filename().string() << "\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'time [s]'\n"
      << "set terminal pngcairo size 1200,900\n"
      << "set output '" << csv_path.stem().string() << ".png'\n"
      << "set multiplot layout 3,1\n"
      << "set ylabel 'pitch [deg]'\n"
      << "plot '" << csv_path.string() << "' using 1:2 with lines, '' using 1:3 with lines\n"
      << "set ylabel 'winch force [-]'\n"
      << "plot '" << csv_path.string() << "' using 1:12 with lines, '' using 1:13 with lines\n"
      << "set ylabel 'value metric'\n"
      << "plot '" << csv_path.string() << "' using 1:14 with lines, '' using 1:15 with lines\n"
      << "unset multiplot\n";
}

}  // namespace wingpitch
