#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "arw/problem.hpp"

namespace arw {

struct UpdateDiagnostics {
  std::size_t inversions = 0;       ///< fresh O(n^3) inversions, including the initial one
  std::size_t rank_one_updates = 0;
  std::size_t refreshes = 0;        ///< periodic drift refreshes
  std::size_t fallbacks = 0;        ///< rank-1 denominators too small to use
};

/// Dense fundamental matrix F = (I - P_TT)^{-1} for an absorbing set C,
/// maintained under single-node extensions and swaps by Sherman-Morrison
/// rank-1 updates in O(|T|^2).
///
/// Rows and columns of F follow transient_order(), which is a permutation of
/// V \ C that drifts away from sorted order as updates remove and append
/// nodes. Cached: ac, F 1 and s_T^T F.
class FundamentalState {
 public:
  static constexpr std::size_t kRefreshPeriod = 64;
  static constexpr double kMinDenominator = 1e-12;

  FundamentalState(CentralityProblem problem, NodeSet absorbing);

  const CentralityProblem& problem() const noexcept { return problem_; }
  const NodeSet& absorbing() const noexcept { return absorbing_; }
  std::span<const NodeId> transient_order() const noexcept { return order_; }
  const Eigen::MatrixXd& inverse() const noexcept { return inverse_; }
  const UpdateDiagnostics& diagnostics() const noexcept { return diag_; }
  bool is_transient(NodeId v) const noexcept { return position_[v] >= 0; }

  /// Cached ac_Q(C).
  double ac() const noexcept { return ac_; }

  /// ac_Q(C u {u}) read off the cached sums, without touching F. Equal to
  /// extended(u).ac(): removing transient u from F changes s^T F 1 by
  /// -(s^T F e_u)(e_u^T F 1) / F(u, u).
  double ac_if_extended(NodeId u) const;

  void extend(NodeId u);
  FundamentalState extended(NodeId u) const;

  /// C <- C \ {v} u {u}.
  void swap(NodeId v, NodeId u);
  FundamentalState swapped(NodeId v, NodeId u) const;

  /// Replaces F by a fresh inversion; transient order becomes sorted.
  void refresh();

  /// ||F (I - P_TT) - I||_F with P_TT rebuilt from the problem.
  double residual() const;

  /// F permuted to sorted transient order, matching build_transition.
  Eigen::MatrixXd inverse_in_node_order() const;

 private:
  void invert_from_scratch();
  void recompute_cache();
  void after_update();
  /// F <- (A + e_row b^T)^{-1} given F = A^{-1}. False if the denominator is
  /// degenerate; F is untouched in that case.
  bool rank_one_row_update(Eigen::Index row, const Eigen::RowVectorXd& b);
  /// Row `row` of P restricted to the current transient order.
  Eigen::RowVectorXd transient_row(NodeId node) const;
  void drop_transient(NodeId u);

  CentralityProblem problem_;
  NodeSet absorbing_;
  std::vector<NodeId> order_;
  std::vector<std::ptrdiff_t> position_;
  Eigen::MatrixXd inverse_;
  Eigen::VectorXd row_sums_;          // F 1
  Eigen::RowVectorXd weighted_cols_;  // s_T^T F
  Eigen::VectorXd start_;             // s restricted to transient order
  double ac_ = 0.0;
  std::size_t since_refresh_ = 0;
  UpdateDiagnostics diag_;
};

}  // namespace arw
