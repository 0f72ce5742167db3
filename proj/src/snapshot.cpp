#include "wingpitch/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wingpitch {

namespace {

void write_block(std::ofstream& out, const char* name,
                 const Eigen::MatrixXd& m) {
  out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << (c ? " " : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace

bool WeightSnapshot::all_finite() const {
  return critic_tracking.allFinite() && actor_tracking.allFinite() &&
         critic_stabilizing.allFinite() && actor_stabilizing.allFinite();
}

void save_weights(const WeightSnapshot& snapshot,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("snapshot: cannot open " + path.string() +
                             " for writing");
  }
  out << "# wingpitch weight snapshot v1\n";
  out << "# blocks: <name> <rows> <cols>, then <rows> lines of row-major values\n";
  write_block(out, "critic_tracking", snapshot.critic_tracking);
  write_block(out, "actor_tracking", snapshot.actor_tracking);
  write_block(out, "critic_stabilizing", snapshot.critic_stabilizing);
  write_block(out, "actor_stabilizing", snapshot.actor_stabilizing);
  if (!out) {
    throw std::runtime_error("snapshot: write failed for " + path.string());
  }
}

WeightSnapshot load_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("snapshot: cannot open " + path.string());
  }

  std::map<std::string, Eigen::MatrixXd> blocks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream head(line);
    std::string name;
    Eigen::Index rows = 0, cols = 0;
    if (!(head >> name >> rows >> cols) || rows < 1 || cols < 1) {
      throw std::runtime_error("snapshot: bad block header in " + path.string());
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!std::getline(in, line)) {
        throw std::runtime_error("snapshot: truncated block '" + name + "' in " +
                                 path.string());
      }
      std::istringstream row(line);
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (!(row >> m(r, c))) {
          throw std::runtime_error("snapshot: bad value in block '" + name +
                                   "' in " + path.string());
        }
      }
    }
    blocks[name] = std::move(m);
  }

  auto fetch = [&](const char* name, Eigen::Index rows,
                   Eigen::Index cols) -> Eigen::MatrixXd {
    auto it = blocks.find(name);
    if (it == blocks.end()) {
      throw std::runtime_error("snapshot: missing block '" + std::string(name) +
                               "' in " + path.string());
    }
    if (it->second.rows() != rows || it->second.cols() != cols) {
      throw std::runtime_error("snapshot: block '" + std::string(name) +
                               "' has wrong shape in " + path.string());
    }
    return it->second;
  };

  WeightSnapshot s;
  s.critic_tracking = fetch("critic_tracking", 6, 6);
  s.actor_tracking = fetch("actor_tracking", 1, 6);
  s.critic_stabilizing = fetch("critic_stabilizing", 3, 3);
  s.actor_stabilizing = fetch("actor_stabilizing", 1, 3);
  return s;
}

}  // namespace wingpitch
