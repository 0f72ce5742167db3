#include "wingpitch/learner.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace wingpitch {

namespace {

void require_dim(const Eigen::VectorXd& z, int d, const char* who) {
  if (z.size() != d) {
    throw std::invalid_argument(std::string(who) + ": feature dimension mismatch");
  }
}

}  // namespace

void LearnerConfig::validate() const {
  const int d = dim();
  if (d < 1) {
    throw std::invalid_argument("LearnerConfig: empty guide vector");
  }
  if (state_weight.rows() != d || state_weight.cols() != d) {
    throw std::invalid_argument("LearnerConfig: Q dimension mismatch");
  }
  if ((state_weight - state_weight.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("LearnerConfig: Q must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(state_weight);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("LearnerConfig: Q must be positive definite");
  }
  if (!(control_weight > 0.0)) {
    throw std::invalid_argument("LearnerConfig: R must be positive");
  }
  if (!(critic_rate > 0.0 && critic_rate < 1.0) ||
      !(actor_rate > 0.0 && actor_rate < 1.0)) {
    throw std::invalid_argument("LearnerConfig: learning rates must lie in (0,1)");
  }
}

LearnerState LearnerState::initialize(LearnerConfig config, double eps) {
  config.validate();
  if (eps < 0.0) {
    throw std::invalid_argument("LearnerState: negative critic init");
  }
  LearnerState s;
  const int d = config.dim();
  s.critic.omega = eps * Eigen::MatrixXd::Identity(d, d);
  s.config = std::move(config);
  s.actor.omega = extract_policy(s.config, s.critic);
  return s;
}

double stage_cost(const LearnerConfig& cfg, const Eigen::VectorXd& z, double u) {
  require_dim(z, cfg.dim(), "stage_cost");
  return 0.5 * (z.dot(cfg.state_weight * z) + cfg.control_weight * u * u);
}

double value(const CriticWeights& critic, const Eigen::VectorXd& z) {
  if (z.size() != critic.omega.rows()) {
    throw std::invalid_argument("value: feature dimension mismatch");
  }
  return 0.5 * z.dot(critic.omega * z);
}

Eigen::RowVectorXd extract_policy(const LearnerConfig& cfg,
                                  const CriticWeights& critic) {
  if (critic.omega.rows() != cfg.dim() || critic.omega.cols() != cfg.dim()) {
    throw std::invalid_argument("extract_policy: weight dimension mismatch");
  }
  return -cfg.guide * critic.omega;
}

double control_signal(const ActorWeights& actor, const Eigen::VectorXd& z) {
  if (z.size() != actor.omega.cols()) {
    throw std::invalid_argument("control_signal: feature dimension mismatch");
  }
  return (actor.omega * z).value();
}

double bellman_target(const LearnerConfig& cfg, const CriticWeights& critic,
                      const Eigen::VectorXd& z_now, double u_now,
                      const Eigen::VectorXd& z_next) {
  return stage_cost(cfg, z_now, u_now) + value(critic, z_next);
}

CriticUpdateResult critic_update(LearnerState& state,
                                 const Eigen::VectorXd& z_now, double u_now,
                                 const Eigen::VectorXd& z_next) {
  const double v_now = value(state.critic, z_now);
  const double target =
      bellman_target(state.config, state.critic, z_now, u_now, z_next);
  const double td = v_now - target;
  if (!std::isfinite(td)) {
    throw std::domain_error("critic_update: non-finite temporal difference");
  }
  const Eigen::MatrixXd step =
      state.config.critic_rate * td * (z_now * z_now.transpose());
  state.critic.omega -= step;
  state.critic.omega =
      0.5 * (state.critic.omega + state.critic.omega.transpose());
  return {td, step.norm()};
}

void actor_update(LearnerState& state, const Eigen::VectorXd& z_now) {
  const double u = control_signal(state.actor, z_now);
  const Eigen::RowVectorXd policy = extract_policy(state.config, state.critic);
  const double u_target = (policy * z_now).value();
  state.actor.omega -=
      state.config.actor_rate * (u - u_target) * z_now.transpose();
}

double value_metric(LearnerState& state, const Eigen::VectorXd& z) {
  const double v = value(state.critic, z);
  state.last_value = v;
  return v;
}

LearnerConfig default_tracking_config() {
  LearnerConfig cfg;
  Eigen::VectorXd q(6);
  q << 25, 25, 0.25, 0.25, 25, 25;
  cfg.state_weight = (1e-4 * q).asDiagonal();
  cfg.control_weight = 1e-7;
  cfg.guide.resize(6);
  cfg.guide << 200, 50, 10, 5, 10, 5;
  cfg.critic_rate = 0.01;
  cfg.actor_rate = 0.01;
  return cfg;
}

LearnerConfig default_stabilizing_config() {
  LearnerConfig cfg;
  Eigen::VectorXd q(3);
  q << 25, 25, 0.0025;
  cfg.state_weight = (1e-6 * q).asDiagonal();
  cfg.control_weight = 10.0;
  cfg.guide.resize(3);
  cfg.guide << 10, 10, 5;
  cfg.critic_rate = 0.01;
  cfg.actor_rate = 0.05;
  return cfg;
}

}  // namespace wingpitch
