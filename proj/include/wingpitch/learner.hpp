#pragma once

#include <Eigen/Core>

namespace wingpitch {

/// Weights and rates for one optimization process. `state_weight` (Q) must be
/// symmetric positive definite, `control_weight` (R) positive, and the guide
/// row maps the value gradient to a control signal.
struct LearnerConfig {
  Eigen::MatrixXd state_weight;   // Q, d x d
  double control_weight = 1.0;    // R
  Eigen::RowVectorXd guide;       // P, 1 x d
  double critic_rate = 0.01;      // in (0,1)
  double actor_rate = 0.01;       // in (0,1)

  int dim() const { return static_cast<int>(guide.cols()); }
  void validate() const;  // throws std::invalid_argument on violation
};

struct CriticWeights {
  Eigen::MatrixXd omega;  // symmetric d x d
};

struct ActorWeights {
  Eigen::RowVectorXd omega;  // 1 x d
};

struct LearnerState {
  LearnerConfig config;
  CriticWeights critic;
  ActorWeights actor;
  double last_value = 0.0;

  // Critic starts at eps*I (positive definite); actor starts at the
  // policy-critic fixed point -P*critic.
  static LearnerState initialize(LearnerConfig config, double eps = 1e-3);
};

struct CriticUpdateResult {
  double td_error = 0.0;   // value estimate minus Bellman target
  double step_norm = 0.0;  // Frobenius norm of the applied weight change
};

// Quadratic stage cost 0.5*(z'Qz + R*u^2).
double stage_cost(const LearnerConfig& cfg, const Eigen::VectorXd& z, double u);

// Value estimate 0.5*z'*omega*z.
double value(const CriticWeights& critic, const Eigen::VectorXd& z);

// Guided policy row -P*omega; applied to z it equals -P * dV/dz.
Eigen::RowVectorXd extract_policy(const LearnerConfig& cfg,
                                  const CriticWeights& critic);

// u = omega_a * z.
double control_signal(const ActorWeights& actor, const Eigen::VectorXd& z);

// One-step lookahead target: stage cost now plus value of the successor.
double bellman_target(const LearnerConfig& cfg, const CriticWeights& critic,
                      const Eigen::VectorXd& z_now, double u_now,
                      const Eigen::VectorXd& z_next);

// Gradient step omega -= rate * td * z*z'. The update term is a scaled outer
// product, so symmetry is preserved; the result is re-symmetrized anyway to
// remove floating-point drift. Throws on a non-finite temporal difference.
CriticUpdateResult critic_update(LearnerState& state,
                                 const Eigen::VectorXd& z_now, double u_now,
                                 const Eigen::VectorXd& z_next);

// Gradient step omega_a -= rate * (omega_a*z - (-P*omega_c)*z) * z'.
// Exact no-op when the actor already sits at -P*omega_c.
void actor_update(LearnerState& state, const Eigen::VectorXd& z_now);

// Returns value(critic, z) and records it as last_value for telemetry.
double value_metric(LearnerState& state, const Eigen::VectorXd& z);

// Default constants for the six-feature tracking-error learner.
LearnerConfig default_tracking_config();

// Default constants for the three-feature pitch-state learner.
LearnerConfig default_stabilizing_config();

}  // namespace wingpitch
