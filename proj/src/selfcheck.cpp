#include "wingpitch/selfcheck.hpp"

#include "wingpitch/learner.hpp"
#include "wingpitch/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <ostream>
#include <random>

namespace wingpitch {

namespace {

Eigen::MatrixXd random_symmetric(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd w(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      w(r, c) = u(rng);
    }
  }
  return 0.5 * (w + w.transpose());
}

Eigen::VectorXd random_vector(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Eigen::VectorXd z(d);
  for (int i = 0; i < d; ++i) z(i) = u(rng);
  return z;
}

double rel_err(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  const double scale = want.cwiseAbs().maxCoeff();
  return (got - want).cwiseAbs().maxCoeff() / (scale + 1e-12);
}

}  // namespace

GradientCheckStats check_gradients(std::uint64_t seed, int points) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> upos(0.2, 2.0);
  std::uniform_int_distribution<int> udim(2, 6);

  GradientCheckStats stats;
  while (stats.points < points) {
    const int d = udim(rng);
    LearnerConfig cfg;
    Eigen::VectorXd qdiag(d);
    for (int i = 0; i < d; ++i) qdiag(i) = upos(rng);
    cfg.state_weight = qdiag.asDiagonal();
    cfg.control_weight = upos(rng);
    cfg.guide = random_vector(d, rng).transpose();
    cfg.critic_rate = 0.1;
    cfg.actor_rate = 0.1;

    CriticWeights critic{random_symmetric(d, rng)};
    ActorWeights actor{random_vector(d, rng).transpose()};
    const Eigen::VectorXd z = random_vector(d, rng);
    const Eigen::VectorXd z_next = random_vector(d, rng);
    const double u = upos(rng);

    const double target = bellman_target(cfg, critic, z, u, z_next);
    const double td = value(critic, z) - target;
    // Near-zero residuals make the relative comparison meaningless; resample.
    if (std::abs(td) < 1e-2) continue;
    ++stats.points;

    // Critic: loss over the symmetric generator W (omega = W + W').
    const auto critic_loss = [&](const Eigen::VectorXd& w_flat) {
      Eigen::MatrixXd w = Eigen::Map<const Eigen::MatrixXd>(w_flat.data(), d, d);
      CriticWeights probe{w + w.transpose()};
      const double diff = value(probe, z) - target;
      return 0.5 * diff * diff;
    };
    const Eigen::MatrixXd w0 = 0.5 * critic.omega;
    const Eigen::VectorXd w0_flat =
        Eigen::Map<const Eigen::VectorXd>(w0.data(), d * d);
    const Eigen::VectorXd fd_critic = finite_diff_gradient(critic_loss, w0_flat);
    const Eigen::MatrixXd analytic_critic = td * (z * z.transpose());
    const Eigen::VectorXd analytic_critic_flat =
        Eigen::Map<const Eigen::VectorXd>(analytic_critic.data(), d * d);
    stats.max_rel_err_critic = std::max(
        stats.max_rel_err_critic, rel_err(fd_critic, analytic_critic_flat));

    // Actor: loss directly over the policy row entries.
    const double u_target = (extract_policy(cfg, critic) * z).value();
    const auto actor_loss = [&](const Eigen::VectorXd& a_flat) {
      const double diff = a_flat.dot(z) - u_target;
      return 0.5 * diff * diff;
    };
    const Eigen::VectorXd a0 = actor.omega.transpose();
    const Eigen::VectorXd fd_actor = finite_diff_gradient(actor_loss, a0);
    const double u_err = control_signal(actor, z) - u_target;
    const Eigen::VectorXd analytic_actor = u_err * z;
    stats.max_rel_err_actor =
        std::max(stats.max_rel_err_actor, rel_err(fd_actor, analytic_actor));
  }
  return stats;
}

bool run_self_checks(std::ostream& out) {
  bool all_ok = true;
  const auto report = [&](const char* name, bool ok, double measured,
                          const char* detail) {
    all_ok = all_ok && ok;
    out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << " = "
        << measured << '\n';
  };

  const GradientCheckStats g = check_gradients(20240901, 100);
  report("critic-gradient", g.max_rel_err_critic < 1e-6, g.max_rel_err_critic,
         "max relative error vs central differences");
  report("actor-gradient", g.max_rel_err_actor < 1e-6, g.max_rel_err_actor,
         "max relative error vs central differences");

  const LinearPlant plant = reference_linear_plant();
  const LearnerConfig cfg = reference_linear_config();
  const Eigen::MatrixXd s0 = 1e-3 * Eigen::MatrixXd::Identity(2, 2);
  const GuidedViResult vi = exact_guided_vi(plant, cfg, 10000, s0, 1e-10);
  report("recursion-converged", vi.converged && !vi.diverged,
         vi.final_step_norm, "final step norm");

  Eigen::VectorXd probe(2);
  probe << 1.0, 0.5;
  bool monotone = true;
  double prev = -1.0;
  for (const Eigen::MatrixXd& s : vi.value_matrices) {
    const double v = 0.5 * probe.dot(s * probe);
    if (v < prev - 1e-9) monotone = false;
    prev = v;
  }
  report("value-sequence-monotone", monotone, prev, "final probe value");

  const Eigen::MatrixXd s_star = vi.value_matrices.back();
  const double residual = bellman_residual(plant, cfg, s_star);
  report("fixed-point-identity", residual < 1e-9, residual,
         "stationary identity residual");

  const Eigen::RowVectorXd policy = -cfg.guide * s_star;
  report("closed-loop-stabilizing", is_stabilizing(plant, policy),
         (plant.A + plant.B * policy).eigenvalues().cwiseAbs().maxCoeff(),
         "spectral radius");

  // Actor fixed point: starting at -P*omega_c, the update must be an exact
  // no-op for any feature vector.
  std::mt19937_64 rng(7);
  LearnerState state = LearnerState::initialize(cfg, 0.2);
  state.critic.omega = random_symmetric(2, rng) + 3.0 * Eigen::MatrixXd::Identity(2, 2);
  state.actor.omega = extract_policy(state.config, state.critic);
  const Eigen::RowVectorXd before = state.actor.omega;
  bool noop = true;
  for (int i = 0; i < 32; ++i) {
    actor_update(state, random_vector(2, rng));
    if (state.actor.omega != before) noop = false;
  }
  report("actor-fixed-point", noop, (state.actor.omega - before).norm(),
         "weight drift");

  return all_ok;
}

}  // namespace wingpitch
