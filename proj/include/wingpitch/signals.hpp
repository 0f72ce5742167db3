#pragma once

#include <Eigen/Core>

#include <deque>

namespace wingpitch {

inline constexpr double kPi = 3.14159265358979323846;

enum class ReferenceKind { sinusoid, step, constant };

/// Desired pitch trajectory, evaluated in continuous seconds.
struct ReferenceSignal {
  double amplitude_deg = 20.0;
  double angular_rate_rad_s = 0.132 * kPi;  // multiplies t inside sin()
  ReferenceKind kind = ReferenceKind::sinusoid;
  double step_time_s = 0.0;  // step kind only: 0 before, amplitude after
};

double reference_at(const ReferenceSignal& ref, double t_s);

/// Tracking-error feature vector: current/previous error, backward-difference
/// rates, and windowed means. Order matches the guide-vector convention
/// [e, e_prev, e_v, e_v_prev, e_s, e_s_prev].
struct ErrorVector {
  double e = 0.0;         // deg
  double e_prev = 0.0;    // deg
  double e_v = 0.0;       // deg/s
  double e_v_prev = 0.0;  // deg/s
  double e_s = 0.0;       // deg, windowed mean at current step
  double e_s_prev = 0.0;  // deg, windowed mean one step back

  Eigen::VectorXd as_vector() const;
};

/// Measured pitch state [theta, theta_v, theta_a].
struct PitchState {
  double theta_deg = 0.0;
  double theta_v_dps = 0.0;
  double theta_a_dps2 = 0.0;

  Eigen::VectorXd as_vector() const;
};

// theta_samples ordered oldest to newest.
PitchState build_pitch_state(const std::array<double, 3>& theta_samples,
                             double dt_s);

/// Ring buffer of the most recent raw tracking errors. Holds the N+2 samples
/// needed for the two windowed means of length N+1 plus both backward
/// differences.
class ErrorHistory {
 public:
  ErrorHistory(double dt_s, int window_n);

  // Rejects non-finite samples; evicts the oldest entry once full.
  void push(double e_raw_deg);

  // Warm-up rule: while fewer than N+2 samples are stored, the missing older
  // entries are taken equal to the oldest available sample. An empty history
  // yields the zero vector.
  ErrorVector build() const;

  double dt() const { return dt_s_; }
  int window() const { return window_n_; }
  std::size_t size() const { return buffer_.size(); }
  std::size_t capacity() const { return static_cast<std::size_t>(window_n_) + 2; }
  std::size_t total_pushed() const { return total_pushed_; }
  double newest_time() const;
  void clear();

 private:
  double dt_s_;
  int window_n_;
  std::deque<double> buffer_;   // oldest at front
  std::size_t total_pushed_ = 0;
};

}  // namespace wingpitch
