#pragma once

#include <cstdint>
#include <iosfwd>

namespace wingpitch {

struct GradientCheckStats {
  double max_rel_err_critic = 0.0;
  double max_rel_err_actor = 0.0;
  int points = 0;
};

// Compares the analytic critic/actor loss gradients against central finite
// differences at random weight/feature points (targets held fixed). The
// critic weight matrix is treated as generated by W + W', so the finite
// difference runs over the unconstrained generator entries, where the
// analytic outer-product form is the exact gradient.
GradientCheckStats check_gradients(std::uint64_t seed, int points);

// Runs the recursion and gradient invariant suite, printing one line per
// check. Returns true when everything passes.
bool run_self_checks(std::ostream& out);

}  // namespace wingpitch
