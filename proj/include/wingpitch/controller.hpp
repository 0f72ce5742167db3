#pragma once

#include "wingpitch/learner.hpp"
#include "wingpitch/signals.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace wingpitch {

enum class ControllerMode { learning, actor_only_frozen, fully_frozen };

struct CombinedControl {
  double u_e = 0.0;  // tracking signal, unclamped
  double u_x = 0.0;  // stabilizing signal, unclamped
  double u_f = 0.0;  // combined, clamped to [-1, 1]
};

// u_f = clamp(u_e + u_x, -1, 1); the components are preserved unclamped.
CombinedControl combine(double u_e, double u_x);

/// Pull-only winch split: exactly one of the pair acts at a time.
struct WinchForces {
  double fore = 0.0;
  double aft = 0.0;
};

WinchForces winch_forces(double u_f);

struct StepRecord {
  double t_s = 0.0;
  double theta_ref_deg = 0.0;
  double theta_meas_deg = 0.0;
  ErrorVector error;
  PitchState state;
  CombinedControl control;
  WinchForces forces;
  double value_tracking = 0.0;
  double value_stabilizing = 0.0;
  bool fault = false;
};

struct ControllerConfig {
  LearnerConfig tracking = default_tracking_config();
  LearnerConfig stabilizing = default_stabilizing_config();
  double dt_s = 0.05;        // 20 Hz control period
  int error_window = 20;     // N samples for the windowed means
  double critic_init_eps = 1e-3;
};

/// Online value-iteration controller. Each step ingests one filtered
/// measurement, finishes the previous step's critic/actor updates now that
/// the successor features are known, and emits the combined control.
class Controller {
 public:
  explicit Controller(ControllerConfig config);

  StepRecord step(double t_s, double theta_ref_deg, double theta_meas_deg);

  void set_mode(ControllerMode mode) { mode_ = mode; }
  ControllerMode mode() const { return mode_; }

  const LearnerState& tracking() const { return tracking_; }
  const LearnerState& stabilizing() const { return stabilizing_; }
  LearnerState& tracking() { return tracking_; }
  LearnerState& stabilizing() { return stabilizing_; }

  // Frobenius norm of the critic weight changes applied in the latest step
  // (both learners); zero when no update ran.
  double last_critic_step_norm() const { return last_critic_step_norm_; }

  // Running max of |omega - omega'| over both critics.
  double max_critic_asymmetry() const { return max_critic_asymmetry_; }

  std::size_t fault_count() const { return fault_count_; }
  const ControllerConfig& config() const { return config_; }

 private:
  struct PendingStep {
    Eigen::VectorXd z_tracking;
    double u_tracking;
    Eigen::VectorXd z_stabilizing;
    double u_stabilizing;
  };

  ControllerConfig config_;
  LearnerState tracking_;
  LearnerState stabilizing_;
  ErrorHistory errors_;
  std::array<double, 3> theta_window_{};
  int theta_samples_seen_ = 0;
  std::optional<PendingStep> pending_;
  ControllerMode mode_ = ControllerMode::learning;
  CombinedControl last_control_;
  double last_critic_step_norm_ = 0.0;
  double max_critic_asymmetry_ = 0.0;
  std::size_t fault_count_ = 0;
};

// True when the trailing `window` samples exist in both histories, the mean
// absolute tracking error sits below err_tol, and every critic weight step in
// the window sits below step_tol.
bool convergence_check(std::span<const double> abs_errors,
                       std::span<const double> critic_step_norms, int window,
                       double err_tol, double step_tol);

}  // namespace wingpitch
