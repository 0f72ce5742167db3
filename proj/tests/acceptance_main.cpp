// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run against the default scenario configurations.

#include "wingpitch/oracle.hpp"
#include "wingpitch/scenario.hpp"
#include "wingpitch/selfcheck.hpp"
#include "wingpitch/snapshot.hpp"
#include "wingpitch/telemetry.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

namespace fs = std::filesystem;
using namespace wingpitch;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++g_failures;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " -- " << detail << '\n';
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Trailing moving average of |theta_ref - theta_meas| over `window` records.
std::vector<double> moving_abs_error(const std::vector<StepRecord>& records,
                                     std::size_t window) {
  std::vector<double> out(records.size(), std::numeric_limits<double>::quiet_NaN());
  double sum = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    sum += std::abs(records[i].theta_ref_deg - records[i].theta_meas_deg);
    if (i >= window) {
      sum -= std::abs(records[i - window].theta_ref_deg -
                      records[i - window].theta_meas_deg);
      out[i] = sum / static_cast<double>(window);
    }
  }
  return out;
}

}  // namespace

int main() {
  const fs::path workdir = fs::temp_directory_path() / "wingpitch_acceptance";
  fs::create_directories(workdir);

  // ---- Criterion 1: nominal tracking at the default learning constants ----
  const ScenarioSpec nominal = default_scenario(ScenarioKind::nominal_learning);
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult nominal_run = run_scenario(nominal);
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report("1 nominal tracking",
         nominal_run.summary.abs_avg_error_deg <= 1.0 && wall_s < 60.0,
         "abs avg error = " + fmt(nominal_run.summary.abs_avg_error_deg) +
             " deg (limit 1.0), wall clock = " + fmt(wall_s) + " s (limit 60)");

  // ---- Criterion 2: frozen policy reuses the converged snapshot ----
  const fs::path snapshot_path = workdir / "nominal_weights.txt";
  save_weights(nominal_run.summary.final_weights, snapshot_path);
  ScenarioSpec frozen = default_scenario(ScenarioKind::frozen_policy);
  frozen.snapshot_path = snapshot_path.string();
  const RunResult frozen_run = run_scenario(frozen);
  const double ratio = frozen_run.summary.abs_avg_error_deg /
                       nominal_run.summary.abs_avg_error_deg;
  report("2 frozen-policy validity",
         frozen_run.summary.abs_avg_error_deg <=
             2.5 * nominal_run.summary.abs_avg_error_deg,
         "frozen abs avg = " + fmt(frozen_run.summary.abs_avg_error_deg) +
             " deg, nominal = " + fmt(nominal_run.summary.abs_avg_error_deg) +
             " deg, ratio = " + fmt(ratio) + " (limit 2.5)");

  // ---- Criterion 3: disturbance rejection and recovery ----
  const ScenarioSpec disturbed = default_scenario(ScenarioKind::disturbance_rejection);
  const RunResult disturbed_run = run_scenario(disturbed);
  const double dist_end = disturbed.disturbance.start_s +
                          disturbed.disturbance.duration_s;
  const std::size_t window =
      static_cast<std::size_t>(std::round(10.0 / disturbed.controller.dt_s));
  const auto mov = moving_abs_error(disturbed_run.records, window);
  double recovery_time = -1.0;
  for (std::size_t i = 0; i < disturbed_run.records.size(); ++i) {
    const double t = disturbed_run.records[i].t_s;
    if (t <= dist_end || t > dist_end + 15.0) continue;
    if (std::isfinite(mov[i]) && mov[i] < 1.0) {
      recovery_time = t;
      break;
    }
  }
  const bool weights_finite = disturbed_run.summary.final_weights.all_finite() &&
                              std::isfinite(disturbed_run.summary.max_weight_norm);
  report("3 disturbance rejection",
         recovery_time > 0.0 && weights_finite,
         recovery_time > 0.0
             ? "10 s moving average back under 1 deg at t = " +
                   fmt(recovery_time) + " s (limit " + fmt(dist_end + 15.0) +
                   "), max weight norm = " +
                   fmt(disturbed_run.summary.max_weight_norm)
             : "moving average never recovered within 15 s of t = " +
                   fmt(dist_end));

  // ---- Criterion 4: monotone bounded value recursion ----
  const LinearPlant plant = reference_linear_plant();
  const LearnerConfig lin_cfg = reference_linear_config();
  const Eigen::MatrixXd s0 = 1e-3 * Eigen::MatrixXd::Identity(2, 2);
  const GuidedViResult vi = exact_guided_vi(plant, lin_cfg, 10000, s0, 1e-8);
  Eigen::VectorXd probe(2);
  probe << 1.0, 0.5;
  bool monotone = true;
  double prev = -std::numeric_limits<double>::infinity();
  double final_probe = 0.0;
  for (const Eigen::MatrixXd& s : vi.value_matrices) {
    final_probe = 0.5 * probe.dot(s * probe);
    if (final_probe < prev - 1e-9) monotone = false;
    prev = final_probe;
  }
  report("4 monotone bounded values",
         monotone && vi.converged && !vi.diverged &&
             vi.iterations_run < 10000,
         "probe value rises to " + fmt(final_probe) + " over " +
             std::to_string(vi.iterations_run) +
             " iterations, final step norm = " + fmt(vi.final_step_norm) +
             " (limit 1e-8)");

  // ---- Criterion 5: adaptive critic reaches the exact fixed point ----
  const Eigen::MatrixXd s_star = vi.value_matrices.back();
  LearnerState learner = LearnerState::initialize(lin_cfg, 1e-3);
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> init(-1.0, 1.0);
  const int episodes = 6000;
  const int horizon = 50;
  for (int ep = 0; ep < episodes; ++ep) {
    Eigen::VectorXd z(2);
    z << init(rng), init(rng);
    for (int k = 0; k < horizon; ++k) {
      const double u = control_signal(learner.actor, z);
      const Eigen::VectorXd z_next = plant.A * z + plant.B * u;
      critic_update(learner, z, u, z_next);
      actor_update(learner, z);
      z = z_next;
    }
  }
  const double rel_err =
      ((learner.critic.omega - s_star).cwiseAbs().array() /
       (1.0 + s_star.cwiseAbs().array()))
          .maxCoeff();
  report("5 oracle equivalence", rel_err < 0.05,
         "max elementwise |omega - S*|/(1+|S*|) = " + fmt(rel_err) +
             " (limit 0.05) after " + std::to_string(episodes) + " episodes");

  // ---- Criterion 6: analytic gradients match central differences ----
  const GradientCheckStats grad = check_gradients(20240901, 100);
  report("6 gradient checks",
         grad.max_rel_err_critic < 1e-6 && grad.max_rel_err_actor < 1e-6,
         "critic max rel err = " + fmt(grad.max_rel_err_critic) +
             ", actor max rel err = " + fmt(grad.max_rel_err_actor) +
             " at " + std::to_string(grad.points) + " points (limit 1e-6)");

  // ---- Criterion 7: structural invariants over the nominal run ----
  bool saturation_ok = true;
  bool complementarity_ok = true;
  for (const StepRecord& rec : nominal_run.records) {
    saturation_ok = saturation_ok && std::abs(rec.control.u_f) <= 1.0;
    complementarity_ok =
        complementarity_ok && rec.forces.fore * rec.forces.aft == 0.0;
  }
  bool actor_noop = true;
  {
    LearnerState s = LearnerState::initialize(default_tracking_config(), 0.5);
    s.actor.omega = extract_policy(s.config, s.critic);
    const Eigen::RowVectorXd before = s.actor.omega;
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 64; ++i) {
      Eigen::VectorXd z(6);
      for (int k = 0; k < 6; ++k) z(k) = u(rng);
      actor_update(s, z);
      actor_noop = actor_noop && (s.actor.omega == before);
    }
  }
  report("7 structural invariants",
         saturation_ok && complementarity_ok && actor_noop &&
             nominal_run.summary.max_critic_asymmetry < 1e-12,
         std::string("|u_f|<=1 ") + (saturation_ok ? "ok" : "VIOLATED") +
             ", f_fore*f_aft=0 " + (complementarity_ok ? "ok" : "VIOLATED") +
             ", critic asymmetry = " +
             fmt(nominal_run.summary.max_critic_asymmetry) +
             " (limit 1e-12), actor fixed point " +
             (actor_noop ? "exact" : "VIOLATED"));

  // ---- Criterion 8: byte-identical telemetry under identical spec/seed ----
  const RunResult nominal_again = run_scenario(nominal);
  const fs::path csv_a = workdir / "det_a.csv";
  const fs::path csv_b = workdir / "det_b.csv";
  export_telemetry(nominal_run.records, csv_a);
  export_telemetry(nominal_again.records, csv_b);
  const bool identical = slurp(csv_a) == slurp(csv_b);
  report("8 determinism", identical,
         identical ? "two runs exported byte-identical telemetry ("
                         + std::to_string(nominal_run.records.size()) + " rows)"
                   : "telemetry files differ");

  // ---- Criterion 9: integrator convergence order ----
  {
    PlantParams p;  // default sin-restoring surrogate
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
    report("9 integrator order", order >= 3.5,
           "measured order = " + fmt(order) + " (limit 3.5)");
  }

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED\n"
                                : std::to_string(g_failures) +
                                      " CRITERIA FAILED\n");
  return g_failures == 0 ? 0 : 1;
}
