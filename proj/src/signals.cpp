#include "wingpitch/signals.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wingpitch {

double reference_at(const ReferenceSignal& ref, double t_s) {
  switch (ref.kind) {
    case ReferenceKind::sinusoid:
      return ref.amplitude_deg * std::sin(ref.angular_rate_rad_s * t_s);
    case ReferenceKind::step:
      return t_s < ref.step_time_s ? 0.0 : ref.amplitude_deg;
    case ReferenceKind::constant:
      return ref.amplitude_deg;
  }
  return 0.0;
}

Eigen::VectorXd ErrorVector::as_vector() const {
  Eigen::VectorXd z(6);
  z << e, e_prev, e_v, e_v_prev, e_s, e_s_prev;
  return z;
}

Eigen::VectorXd PitchState::as_vector() const {
  Eigen::VectorXd z(3);
  z << theta_deg, theta_v_dps, theta_a_dps2;
  return z;
}

PitchState build_pitch_state(const std::array<double, 3>& theta_samples,
                             double dt_s) {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("build_pitch_state: dt must be positive");
  }
  for (double s : theta_samples) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("build_pitch_state: non-finite sample");
    }
  }
  const double s0 = theta_samples[0];
  const double s1 = theta_samples[1];
  const double s2 = theta_samples[2];
  PitchState out;
  out.theta_deg = s2;
  out.theta_v_dps = (s2 - s1) / dt_s;
  out.theta_a_dps2 = (s2 - 2.0 * s1 + s0) / (dt_s * dt_s);
  return out;
}

ErrorHistory::ErrorHistory(double dt_s, int window_n)
    : dt_s_(dt_s), window_n_(window_n) {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("ErrorHistory: dt must be positive");
  }
  if (window_n < 1) {
    throw std::invalid_argument("ErrorHistory: window must be >= 1");
  }
}

void ErrorHistory::push(double e_raw_deg) {
  if (!std::isfinite(e_raw_deg)) {
    throw std::invalid_argument("ErrorHistory: non-finite error sample");
  }
  buffer_.push_back(e_raw_deg);
  if (buffer_.size() > capacity()) {
    buffer_.pop_front();
  }
  ++total_pushed_;
}

double ErrorHistory::newest_time() const {
  return total_pushed_ == 0 ? 0.0
                            : static_cast<double>(total_pushed_ - 1) * dt_s_;
}

void ErrorHistory::clear() {
  buffer_.clear();
  total_pushed_ = 0;
}

ErrorVector ErrorHistory::build() const {
  ErrorVector out;
  if (buffer_.empty()) {
    return out;
  }

  // Pad missing history with the oldest available sample, then read off the
  // last N+2 entries as e_{l-N-1} .. e_l.
  const std::size_t n = capacity();
  std::vector<double> s(n);
  const std::size_t missing = n - buffer_.size();
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = i < missing ? buffer_.front() : buffer_[i - missing];
  }

  const int N = window_n_;
  out.e = s[n - 1];
  out.e_prev = s[n - 2];
  out.e_v = (s[n - 1] - s[n - 2]) / dt_s_;
  out.e_v_prev = (s[n - 2] - s[n - 3]) / dt_s_;

  // Windowed means over N+1 raw errors, normalized by N.
  double sum_now = 0.0;
  double sum_prev = 0.0;
  for (int i = 0; i <= N; ++i) {
    sum_now += s[n - 1 - i];
    sum_prev += s[n - 2 - i];
  }
  out.e_s = sum_now / N;
  out.e_s_prev = sum_prev / N;
  return out;
}

}  // namespace wingpitch
