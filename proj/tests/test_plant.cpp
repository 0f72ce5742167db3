#include "wingpitch/plant.hpp"

#include "wingpitch/signals.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wingpitch;

TEST_CASE("trim with no input is an equilibrium") {
  PlantParams p;
  p.trim_deg = 3.0;
  PlantState s{3.0, 0.0};
  for (int i = 0; i < 100; ++i) s = plant_step(p, s, 0.0, 0.0, 0.005);
  CHECK(s.theta_deg == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.theta_dot_dps == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("k=c=0 reduces to the closed-form double integrator") {
  PlantParams p;
  p.damping = 0.0;
  p.restoring = 0.0;
  p.nonlinear_restoring = false;
  const double u = 0.4;
  const double accel_dps2 =
      p.torque_gain * u / p.inertia * 180.0 / kPi;  // constant

  PlantState s{0.0, 0.0};
  const double dt = 0.005;
  const int steps = 200;  // 1 s
  for (int i = 0; i < steps; ++i) s = plant_step(p, s, u, 0.0, dt);
  const double t = steps * dt;
  CHECK(s.theta_dot_dps == doctest::Approx(accel_dps2 * t).epsilon(1e-12));
  CHECK(s.theta_deg == doctest::Approx(0.5 * accel_dps2 * t * t).epsilon(1e-12));
}

TEST_CASE("sin and linear restoring agree for small angles") {
  PlantParams nl;
  PlantParams lin = nl;
  lin.nonlinear_restoring = false;
  PlantState a{4.0, 0.0};
  PlantState b = a;
  double max_diff = 0.0;
  for (int i = 0; i < 200; ++i) {  // 1 s at 200 Hz
    a = plant_step(nl, a, 0.0, 0.0, 0.005);
    b = plant_step(lin, b, 0.0, 0.0, 0.005);
    max_diff = std::max(max_diff, std::abs(a.theta_deg - b.theta_deg));
  }
  CHECK(max_diff < 0.01 * 4.0);
}

TEST_CASE("open-loop energy decays monotonically in linear mode") {
  PlantParams p;
  p.nonlinear_restoring = false;
  const double deg = kPi / 180.0;
  for (double theta0 : {-55.0, -20.0, 10.0, 45.0, 59.0}) {
    PlantState s{theta0, 0.0};
    double prev_energy = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2000; ++i) {
      s = plant_step(p, s, 0.0, 0.0, 0.005);
      const double th = s.theta_deg * deg;
      const double om = s.theta_dot_dps * deg;
      const double energy =
          0.5 * p.inertia * om * om + 0.5 * p.restoring * th * th;
      REQUIRE(energy <= prev_energy + 1e-12);
      prev_energy = energy;
    }
    CHECK(std::abs(s.theta_deg) < 1e-3 * std::abs(theta0));
  }
}

TEST_CASE("halving the step shows at least fourth-order convergence") {
  PlantParams p;  // sin restoring
  const auto simulate = [&](double dt) {
    PlantState s{30.0, 0.0};
    const int steps = static_cast<int>(std::round(10.0 / dt));
    for (int i = 0; i < steps; ++i) s = plant_step(p, s, 0.1, 0.0, dt);
    return s;
  };
  const PlantState ref = simulate(1e-4);
  const auto err = [&](double dt) {
    const PlantState s = simulate(dt);
    return std::hypot(s.theta_deg - ref.theta_deg,
                      s.theta_dot_dps - ref.theta_dot_dps);
  };
  const double e1 = err(0.02);
  const double e2 = err(0.01);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 3.5);
}

TEST_CASE("plant rejects non-finite input") {
  PlantParams p;
  CHECK_THROWS_AS(plant_step(p, {std::nan(""), 0.0}, 0.0, 0.0, 0.005),
                  std::invalid_argument);
  CHECK_THROWS_AS(plant_step(p, {0.0, 0.0}, 0.0, 0.0, 0.0),
                  std::invalid_argument);
  p.inertia = 0.0;
  CHECK_THROWS_AS(plant_step(p, {0.0, 0.0}, 0.0, 0.0, 0.005),
                  std::invalid_argument);
}

TEST_CASE("noise-free sensor tracks the input through the filter") {
  SensorParams sp;
  sp.attitude_noise_std_deg = 0.0;
  sp.spike_probability = 0.0;
  sp.filter_cutoff_hz = 9.99;  // just below Nyquist
  Sensor sensor(sp);
  std::mt19937_64 rng(1);
  double max_dev = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double t = i * sp.dt();
    const double truth = 20.0 * std::sin(0.132 * kPi * t);
    const double out = sensor.sample(truth, t, rng);
    max_dev = std::max(max_dev, std::abs(out - truth));
  }
  CHECK(max_dev < 0.2);  // 1% of the 20 deg amplitude
}

TEST_CASE("filter has unit DC gain and settles within five time constants") {
  SensorParams sp;
  sp.attitude_noise_std_deg = 0.0;
  sp.spike_probability = 0.0;
  sp.filter_cutoff_hz = 2.0;
  Sensor sensor(sp);
  std::mt19937_64 rng(1);
  // Prime at zero, then drive with a constant 10 deg.
  sensor.sample(0.0, 0.0, rng);
  const double tau = 1.0 / (2.0 * kPi * sp.filter_cutoff_hz);
  const int settle_steps = static_cast<int>(std::ceil(5.0 * tau / sp.dt()));
  double out = 0.0;
  for (int i = 1; i <= settle_steps; ++i) {
    out = sensor.sample(10.0, i * sp.dt(), rng);
  }
  CHECK(out == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("sensor rejects off-grid sampling") {
  SensorParams sp;
  Sensor sensor(sp);
  std::mt19937_64 rng(1);
  sensor.sample(0.0, 0.0, rng);
  CHECK_THROWS_AS(sensor.sample(0.0, 0.013, rng), std::invalid_argument);
}

TEST_CASE("spike count over 150 s matches the binomial expectation") {
  SensorParams sp;  // p = 0.002
  Sensor sensor(sp);
  const int samples = 3000;  // 150 s at 20 Hz; expected spikes = 6

  double mean_count = 0.0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    sensor.reset();
    std::mt19937_64 rng(1000 + trial);
    for (int i = 0; i < samples; ++i) {
      sensor.sample(0.0, i * sp.dt(), rng);
    }
    mean_count += sensor.spike_count();
  }
  mean_count /= trials;
  CHECK(mean_count > 3.0);
  CHECK(mean_count < 9.0);
}

TEST_CASE("sensor params are checked") {
  SensorParams sp;
  sp.spike_probability = 0.5;
  CHECK_THROWS_AS(Sensor{sp}, std::invalid_argument);
  sp = SensorParams{};
  sp.filter_cutoff_hz = 10.0;  // at Nyquist
  CHECK_THROWS_AS(Sensor{sp}, std::invalid_argument);
  sp = SensorParams{};
  CHECK(sp.effective_noise_std_deg() ==
        doctest::Approx(0.1 * 0.05 / std::sqrt(2.0)));
  sp.attitude_noise_std_deg = 0.25;
  CHECK(sp.effective_noise_std_deg() == 0.25);
}

TEST_CASE("sensor is deterministic under a fixed seed") {
  SensorParams sp;
  Sensor a(sp);
  Sensor b(sp);
  std::mt19937_64 ra(99), rb(99);
  for (int i = 0; i < 500; ++i) {
    const double t = i * sp.dt();
    const double truth = std::sin(0.3 * t);
    REQUIRE(a.sample(truth, t, ra) == b.sample(truth, t, rb));
  }
}

TEST_CASE("disturbance torque honors the window and waveform") {
  DisturbanceProfile prof;
  prof.waveform = DisturbanceWaveform::pulse;
  prof.start_s = 120.0;
  prof.duration_s = 10.0;
  prof.amplitude = 2.0;
  std::mt19937_64 rng(4);
  CHECK(disturbance_torque(prof, 100.0, rng) == 0.0);
  CHECK(disturbance_torque(prof, 125.0, rng) == 2.0);
  CHECK(disturbance_torque(prof, 130.0, rng) == 0.0);

  prof.waveform = DisturbanceWaveform::random_jerk;
  double sum = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double d = disturbance_torque(prof, 121.0, rng);
    CHECK(std::abs(d) <= prof.amplitude);
    sum += d;
  }
  CHECK(std::abs(sum / 200.0) < 0.1 * prof.amplitude);

  prof.waveform = DisturbanceWaveform::none;
  CHECK(disturbance_torque(prof, 125.0, rng) == 0.0);
}
