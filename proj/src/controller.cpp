#include "wingpitch/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wingpitch {

namespace {

double clamp_unit(double u) { return std::clamp(u, -1.0, 1.0); }

double asymmetry(const Eigen::MatrixXd& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

CombinedControl combine(double u_e, double u_x) {
  if (!std::isfinite(u_e) || !std::isfinite(u_x)) {
    throw std::invalid_argument("combine: non-finite control component");
  }
  return {u_e, u_x, clamp_unit(u_e + u_x)};
}

WinchForces winch_forces(double u_f) {
  return {std::max(u_f, 0.0), std::max(-u_f, 0.0)};
}

Controller::Controller(ControllerConfig config)
    : config_(std::move(config)),
      tracking_(LearnerState::initialize(config_.tracking, config_.critic_init_eps)),
      stabilizing_(
          LearnerState::initialize(config_.stabilizing, config_.critic_init_eps)),
      errors_(config_.dt_s, config_.error_window) {
  if (config_.tracking.dim() != 6) {
    throw std::invalid_argument("Controller: tracking learner needs 6 features");
  }
  if (config_.stabilizing.dim() != 3) {
    throw std::invalid_argument("Controller: stabilizing learner needs 3 features");
  }
}

StepRecord Controller::step(double t_s, double theta_ref_deg,
                            double theta_meas_deg) {
  StepRecord rec;
  rec.t_s = t_s;
  rec.theta_ref_deg = theta_ref_deg;
  rec.theta_meas_deg = theta_meas_deg;
  last_critic_step_norm_ = 0.0;

  if (!std::isfinite(theta_meas_deg) || !std::isfinite(theta_ref_deg)) {
    // Fault: hold the previous control, skip learning, and drop the pending
    // transition so no corrupted successor ever reaches the critics.
    ++fault_count_;
    pending_.reset();
    rec.fault = true;
    rec.control = last_control_;
    rec.forces = winch_forces(rec.control.u_f);
    rec.value_tracking = tracking_.last_value;
    rec.value_stabilizing = stabilizing_.last_value;
    return rec;
  }

  errors_.push(theta_meas_deg - theta_ref_deg);
  if (theta_samples_seen_ == 0) {
    theta_window_.fill(theta_meas_deg);
  } else {
    theta_window_[0] = theta_window_[1];
    theta_window_[1] = theta_window_[2];
    theta_window_[2] = theta_meas_deg;
  }
  ++theta_samples_seen_;

  rec.error = errors_.build();
  rec.state = build_pitch_state(theta_window_, config_.dt_s);
  const Eigen::VectorXd z_e = rec.error.as_vector();
  const Eigen::VectorXd z_x = rec.state.as_vector();

  // Finish the previous step now that its successor features are available:
  // evaluate the value functions, then extract the improved policies.
  if (pending_ && mode_ != ControllerMode::fully_frozen) {
    const CriticUpdateResult re =
        critic_update(tracking_, pending_->z_tracking, pending_->u_tracking, z_e);
    const CriticUpdateResult rx = critic_update(
        stabilizing_, pending_->z_stabilizing, pending_->u_stabilizing, z_x);
    last_critic_step_norm_ = re.step_norm + rx.step_norm;
    if (mode_ == ControllerMode::learning) {
      actor_update(tracking_, pending_->z_tracking);
      actor_update(stabilizing_, pending_->z_stabilizing);
    }
    max_critic_asymmetry_ = std::max(
        {max_critic_asymmetry_, asymmetry(tracking_.critic.omega),
         asymmetry(stabilizing_.critic.omega)});
  }

  const double u_e = control_signal(tracking_.actor, z_e);
  const double u_x = control_signal(stabilizing_.actor, z_x);
  rec.control = combine(u_e, u_x);
  rec.forces = winch_forces(rec.control.u_f);
  rec.value_tracking = value_metric(tracking_, z_e);
  rec.value_stabilizing = value_metric(stabilizing_, z_x);

  // The Bellman stage costs see each learner's signal clamped to the
  // actuator range: no single winch pair can exert more than that, and it
  // keeps outlier-driven targets bounded.
  pending_ = PendingStep{z_e, clamp_unit(u_e), z_x, clamp_unit(u_x)};
  last_control_ = rec.control;
  return rec;
}

bool convergence_check(std::span<const double> abs_errors,
                       std::span<const double> critic_step_norms, int window,
                       double err_tol, double step_tol) {
  if (window < 2) {
    throw std::invalid_argument("convergence_check: window must be >= 2");
  }
  const std::size_t w = static_cast<std::size_t>(window);
  if (abs_errors.size() < w || critic_step_norms.size() < w) {
    return false;
  }
  double err_sum = 0.0;
  for (std::size_t i = abs_errors.size() - w; i < abs_errors.size(); ++i) {
    err_sum += std::abs(abs_errors[i]);
  }
  if (err_sum / static_cast<double>(window) >= err_tol) {
    return false;
  }
  for (std::size_t i = critic_step_norms.size() - w; i < critic_step_norms.size();
       ++i) {
    if (critic_step_norms[i] >= step_tol) {
      return false;
    }
  }
  return true;
}

}  // namespace wingpitch
