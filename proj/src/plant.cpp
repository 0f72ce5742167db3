#include "wingpitch/plant.hpp"

#include "wingpitch/signals.hpp"

#include <cmath>
#include <stdexcept>

namespace wingpitch {

namespace {

constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

struct Deriv {
  double d_theta;
  double d_omega;
};

// State in radians; torque inputs already summed.
Deriv dynamics(const PlantParams& p, double theta_rad, double omega_rad,
               double applied_torque) {
  const double defl = theta_rad - p.trim_deg * kDegToRad;
  const double restoring =
      p.nonlinear_restoring ? std::sin(defl) : defl;
  const double alpha =
      (-p.damping * omega_rad - p.restoring * restoring + applied_torque) /
      p.inertia;
  return {omega_rad, alpha};
}

}  // namespace

PlantState plant_step(const PlantParams& params, PlantState state, double u_f,
                      double disturbance_torque, double dt_s) {
  if (!(params.inertia > 0.0) || params.damping < 0.0 || params.restoring < 0.0) {
    throw std::invalid_argument("plant_step: invalid plant parameters");
  }
  if (!(dt_s > 0.0) || !std::isfinite(u_f) || !std::isfinite(disturbance_torque) ||
      !std::isfinite(state.theta_deg) || !std::isfinite(state.theta_dot_dps)) {
    throw std::invalid_argument("plant_step: non-finite input");
  }

  const double torque =
      params.arm_factor * params.torque_gain * u_f + disturbance_torque;
  double th = state.theta_deg * kDegToRad;
  double om = state.theta_dot_dps * kDegToRad;

  const Deriv k1 = dynamics(params, th, om, torque);
  const Deriv k2 = dynamics(params, th + 0.5 * dt_s * k1.d_theta,
                            om + 0.5 * dt_s * k1.d_omega, torque);
  const Deriv k3 = dynamics(params, th + 0.5 * dt_s * k2.d_theta,
                            om + 0.5 * dt_s * k2.d_omega, torque);
  const Deriv k4 =
      dynamics(params, th + dt_s * k3.d_theta, om + dt_s * k3.d_omega, torque);

  th += dt_s / 6.0 * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta + k4.d_theta);
  om += dt_s / 6.0 * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega + k4.d_omega);

  return {th * kRadToDeg, om * kRadToDeg};
}

double SensorParams::effective_noise_std_deg() const {
  if (attitude_noise_std_deg >= 0.0) {
    return attitude_noise_std_deg;
  }
  // Backward differencing of white attitude noise of std s gives rate noise
  // of std s*sqrt(2)/dt; invert for the configured gyro RMS figure.
  return gyro_rms_noise_dps * dt() / std::sqrt(2.0);
}

void SensorParams::validate() const {
  if (!(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("SensorParams: sample rate must be positive");
  }
  if (spike_probability < 0.0 || spike_probability >= 0.01) {
    throw std::invalid_argument(
        "SensorParams: spike probability must lie in [0, 0.01)");
  }
  if (spike_min_deg < 0.0 || spike_max_deg < spike_min_deg) {
    throw std::invalid_argument("SensorParams: bad spike magnitude range");
  }
  if (!(filter_cutoff_hz > 0.0) || filter_cutoff_hz >= 0.5 * sample_rate_hz) {
    throw std::invalid_argument(
        "SensorParams: filter cutoff must lie below Nyquist");
  }
  if (gyro_rms_noise_dps < 0.0) {
    throw std::invalid_argument("SensorParams: negative gyro noise");
  }
}

Sensor::Sensor(SensorParams params) : params_(params) {
  params_.validate();
  filter_alpha_ = 1.0 - std::exp(-2.0 * kPi * params_.filter_cutoff_hz * params_.dt());
}

void Sensor::reset() {
  filter_state_ = 0.0;
  primed_ = false;
  spike_count_ = 0;
  sample_index_ = 0;
}

double Sensor::sample(double true_theta_deg, double t_s, std::mt19937_64& rng) {
  if (!std::isfinite(true_theta_deg)) {
    throw std::invalid_argument("Sensor: non-finite attitude");
  }
  const double expected_t = static_cast<double>(sample_index_) * params_.dt();
  if (std::abs(t_s - expected_t) > 1e-6) {
    throw std::invalid_argument("Sensor: sample off the uniform time grid");
  }
  ++sample_index_;

  double raw = true_theta_deg;
  const double noise_std = params_.effective_noise_std_deg();
  if (noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_std);
    raw += noise(rng);
  }
  if (params_.spike_probability > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < params_.spike_probability) {
      std::uniform_real_distribution<double> mag(params_.spike_min_deg,
                                                 params_.spike_max_deg);
      const double sign = coin(rng) < 0.5 ? -1.0 : 1.0;
      raw += sign * mag(rng);
      ++spike_count_;
    }
  }

  if (!primed_) {
    filter_state_ = raw;
    primed_ = true;
  } else {
    filter_state_ += filter_alpha_ * (raw - filter_state_);
  }
  return filter_state_;
}

double disturbance_torque(const DisturbanceProfile& profile, double t_s,
                          std::mt19937_64& rng) {
  if (!profile.active(t_s)) {
    return 0.0;
  }
  switch (profile.waveform) {
    case DisturbanceWaveform::pulse:
      return profile.amplitude;
    case DisturbanceWaveform::random_jerk: {
      std::uniform_real_distribution<double> jerk(-profile.amplitude,
                                                  profile.amplitude);
      return jerk(rng);
    }
    case DisturbanceWaveform::none:
      break;
  }
  return 0.0;
}

}  // namespace wingpitch
