#pragma once

#include "wingpitch/learner.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace wingpitch {

/// Discrete-time linear test plant x_{k+1} = A x_k + B u_k with scalar input.
struct LinearPlant {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
};

struct GuidedViResult {
  // value_matrices[t] is S^(t); value_matrices.size() == iterations_run + 1.
  std::vector<Eigen::MatrixXd> value_matrices;
  // policies[t] = -P * S^(t), the policy extracted from value_matrices[t].
  std::vector<Eigen::RowVectorXd> policies;
  bool diverged = false;
  bool converged = false;
  int iterations_run = 0;
  double final_step_norm = 0.0;
};

// Exact value-iteration recursion induced by substituting the closed loop
// x_{k+1} = (A + B*pi) x_k and pi = -P*S into the one-step value identity:
//   S^(t+1) = Q + pi' R pi + (A + B*pi)' S^(t) (A + B*pi),  pi = -P*S^(t).
// Stops early when the step norm falls below convergence_tol (if positive)
// or when the iterate norm exceeds divergence_norm (reported, not thrown).
GuidedViResult exact_guided_vi(const LinearPlant& plant,
                               const LearnerConfig& cfg, int iterations,
                               const Eigen::MatrixXd& s0,
                               double convergence_tol = 0.0,
                               double divergence_norm = 1e12);

// Spectral-radius test of the closed loop A + B*policy.
bool is_stabilizing(const LinearPlant& plant, const Eigen::RowVectorXd& policy);

// Residual of the stationary one-step identity at S with pi = -P*S.
double bellman_residual(const LinearPlant& plant, const LearnerConfig& cfg,
                        const Eigen::MatrixXd& s);

// Central differences (f(x+h e_i) - f(x-h e_i)) / (2h).
Eigen::VectorXd finite_diff_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-5);

// Stabilizable two-state plant and matching learner constants used by the
// recursion/learner cross-checks.
LinearPlant reference_linear_plant();
LearnerConfig reference_linear_config();

}  // namespace wingpitch
