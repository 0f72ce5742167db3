#pragma once

#include <Eigen/Core>

#include <filesystem>

namespace wingpitch {

/// Critic/actor weights of both learners, as written to and read from the
/// flat text snapshot format (named blocks, row-major rows of decimals).
struct WeightSnapshot {
  Eigen::MatrixXd critic_tracking;        // 6 x 6
  Eigen::RowVectorXd actor_tracking;      // 1 x 6
  Eigen::MatrixXd critic_stabilizing;     // 3 x 3
  Eigen::RowVectorXd actor_stabilizing;   // 1 x 3

  bool all_finite() const;
};

void save_weights(const WeightSnapshot& snapshot,
                  const std::filesystem::path& path);

WeightSnapshot load_weights(const std::filesystem::path& path);

}  // namespace wingpitch
