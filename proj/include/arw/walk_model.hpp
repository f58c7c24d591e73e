#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "arw/problem.hpp"

namespace arw {

inline constexpr std::ptrdiff_t kAbsorbing = -1;

/// Transition structure of the absorbing chain for a fixed absorbing set C.
///
/// Rows are indexed by transient position (transient_order[i] is the node id
/// at row i). Absorbing rows are the identity and are not stored.
struct TransitionSystem {
  NodeSet absorbing;
  std::vector<NodeId> transient_order;
  /// node id -> transient position, or kAbsorbing.
  std::vector<std::ptrdiff_t> position;
  /// Transient-to-transient block, |T| x |T|.
  Eigen::MatrixXd transient_block;
  /// Transient-to-absorbing block, |T| x |C|, columns follow `absorbing`.
  Eigen::MatrixXd absorbing_block;

  std::size_t num_transient() const noexcept { return transient_order.size(); }
};

TransitionSystem build_transition(const CentralityProblem& problem, const NodeSet& absorbing);

/// Per-node expected absorption length L_C (zero at absorbing nodes).
Eigen::VectorXd absorption_lengths(const CentralityProblem& problem, const NodeSet& absorbing);

/// ac_Q(C) = s^T L_C, via one LU solve of (I - P_TT) y = 1.
double exact_ac(const CentralityProblem& problem, const NodeSet& absorbing);

struct ApproximateAc {
  double value = 0.0;
  double last_increment = 0.0;  ///< x_l . 1 of the final term added
  std::size_t iterations = 0;
};

/// Truncated series sum_l x_l . 1 with x_{l+1} = x_l P_TT, stopping once the
/// latest increment drops below epsilon.
ApproximateAc approximate_ac(const TransitionSystem& ts, std::span<const double> start, double epsilon = 1e-6,
                             std::size_t max_iterations = 1'000'000);

std::string describe(const NodeSet& set);

}  // namespace arw
