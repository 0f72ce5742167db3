#pragma once

#include <cstdint>
#include <random>

namespace wingpitch {

/// Damped pendulum-like surrogate for the wing-mast rig: restoring torque
/// about a trim angle, viscous damping, and a normalized actuation torque.
struct PlantParams {
  double inertia = 0.5;             // J
  double damping = 0.8;             // c
  double restoring = 2.0;           // k
  double trim_deg = 0.0;
  double torque_gain = 2.0;         // torque per unit normalized command
  double arm_factor = 1.0;          // geometry factor on applied torque
  bool nonlinear_restoring = true;  // sin restoring vs linear
};

struct PlantState {
  double theta_deg = 0.0;
  double theta_dot_dps = 0.0;
};

// One fixed-step RK4 integration step of
//   J*theta_dd = -c*theta_d - k*g(theta - trim) + arm*gain*u + d
// with g = sin (radians) or identity. Throws on non-finite input.
PlantState plant_step(const PlantParams& params, PlantState state, double u_f,
                      double disturbance_torque, double dt_s);

struct SensorParams {
  double sample_rate_hz = 20.0;
  double gyro_rms_noise_dps = 0.1;
  // Negative means: derive from the gyro figure so that backward differences
  // of consecutive samples carry gyro_rms_noise_dps of rate noise.
  double attitude_noise_std_deg = -1.0;
  double spike_probability = 0.002;       // per sample
  double spike_min_deg = 5.0;
  double spike_max_deg = 15.0;
  double filter_cutoff_hz = 5.0;
  std::uint64_t rng_seed = 42;

  double dt() const { return 1.0 / sample_rate_hz; }
  double effective_noise_std_deg() const;
  void validate() const;  // throws std::invalid_argument
};

/// 20 Hz attitude channel: additive gaussian noise, occasional spike
/// outliers, then a first-order IIR low-pass (unit DC gain, causal).
class Sensor {
 public:
  explicit Sensor(SensorParams params);

  // Samples must arrive on the sensor's uniform time grid.
  double sample(double true_theta_deg, double t_s, std::mt19937_64& rng);

  int spike_count() const { return spike_count_; }
  void reset();

 private:
  SensorParams params_;
  double filter_alpha_;
  double filter_state_ = 0.0;
  bool primed_ = false;
  int spike_count_ = 0;
  std::int64_t sample_index_ = 0;
};

enum class DisturbanceWaveform { none, pulse, random_jerk };

struct DisturbanceProfile {
  double start_s = 120.0;
  double duration_s = 10.0;
  double amplitude = 0.0;  // torque
  DisturbanceWaveform waveform = DisturbanceWaveform::none;

  bool active(double t_s) const {
    return waveform != DisturbanceWaveform::none && t_s >= start_s &&
           t_s < start_s + duration_s;
  }
};

// Zero outside the window; rng is consumed only while the window is active.
double disturbance_torque(const DisturbanceProfile& profile, double t_s,
                          std::mt19937_64& rng);

}  // namespace wingpitch
