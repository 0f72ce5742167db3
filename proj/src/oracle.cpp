#include "wingpitch/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace wingpitch {

GuidedViResult exact_guided_vi(const LinearPlant& plant,
                               const LearnerConfig& cfg, int iterations,
                               const Eigen::MatrixXd& s0,
                               double convergence_tol, double divergence_norm) {
  const int d = cfg.dim();
  if (plant.A.rows() != d || plant.A.cols() != d || plant.B.size() != d) {
    throw std::invalid_argument("exact_guided_vi: plant dimension mismatch");
  }
  if (s0.rows() != d || s0.cols() != d) {
    throw std::invalid_argument("exact_guided_vi: S0 dimension mismatch");
  }
  if (iterations < 0) {
    throw std::invalid_argument("exact_guided_vi: negative iteration count");
  }

  GuidedViResult out;
  out.value_matrices.reserve(static_cast<std::size_t>(iterations) + 1);
  out.value_matrices.push_back(s0);
  out.policies.push_back(-cfg.guide * s0);

  Eigen::MatrixXd s = s0;
  for (int t = 0; t < iterations; ++t) {
    const Eigen::RowVectorXd pi = -cfg.guide * s;
    const Eigen::MatrixXd a_cl = plant.A + plant.B * pi;
    const Eigen::MatrixXd next = cfg.state_weight +
                                 pi.transpose() * cfg.control_weight * pi +
                                 a_cl.transpose() * s * a_cl;
    out.final_step_norm = (next - s).norm();
    s = next;
    out.value_matrices.push_back(s);
    out.policies.push_back(-cfg.guide * s);
    out.iterations_run = t + 1;
    if (s.norm() > divergence_norm) {
      out.diverged = true;
      break;
    }
    if (convergence_tol > 0.0 && out.final_step_norm < convergence_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

bool is_stabilizing(const LinearPlant& plant, const Eigen::RowVectorXd& policy) {
  const Eigen::MatrixXd a_cl = plant.A + plant.B * policy;
  const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(a_cl, false)
                                   .eigenvalues();
  return eig.cwiseAbs().maxCoeff() < 1.0;
}

double bellman_residual(const LinearPlant& plant, const LearnerConfig& cfg,
                        const Eigen::MatrixXd& s) {
  const Eigen::RowVectorXd pi = -cfg.guide * s;
  const Eigen::MatrixXd a_cl = plant.A + plant.B * pi;
  const Eigen::MatrixXd rhs = cfg.state_weight +
                              pi.transpose() * cfg.control_weight * pi +
                              a_cl.transpose() * s * a_cl;
  return (s - rhs).norm();
}

Eigen::VectorXd finite_diff_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite_diff_gradient: step must be positive");
  }
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double fp = f(probe);
    probe(i) = x(i) - h;
    const double fm = f(probe);
    probe(i) = x(i);
    grad(i) = (fp - fm) / (2.0 * h);
  }
  return grad;
}

LinearPlant reference_linear_plant() {
  LinearPlant plant;
  plant.A.resize(2, 2);
  plant.A << 0.99, 0.05,
             -0.10, 0.97;
  plant.B.resize(2);
  plant.B << 0.0, 0.05;
  return plant;
}

LearnerConfig reference_linear_config() {
  LearnerConfig cfg;
  cfg.state_weight = 0.05 * Eigen::MatrixXd::Identity(2, 2);
  cfg.control_weight = 0.1;
  cfg.guide.resize(2);
  cfg.guide << 1.0, 0.5;
  cfg.critic_rate = 0.05;
  cfg.actor_rate = 0.1;
  return cfg;
}

}  // namespace wingpitch
