#include "arw/fundamental_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arw/errors.hpp"
#include "arw/walk_model.hpp"

namespace arw {

FundamentalState::FundamentalState(CentralityProblem problem, NodeSet absorbing)
    : problem_(std::move(problem)), absorbing_(std::move(absorbing)) {
  invert_from_scratch();
}

void FundamentalState::invert_from_scratch() {
  const TransitionSystem ts = build_transition(problem_, absorbing_);
  order_ = ts.transient_order;
  position_ = ts.position;
  const Eigen::Index t = ts.transient_block.rows();
  if (t > 0) {
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(t, t) - ts.transient_block;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    if (lu.rcond() < 1e-14) {
      throw NumericalError("I - P_TT is singular for absorbing set " + describe(absorbing_));
    }
    inverse_ = lu.inverse();
  } else {
    inverse_.resize(0, 0);
  }
  ++diag_.inversions;
  since_refresh_ = 0;
  recompute_cache();
}

void FundamentalState::recompute_cache() {
  const auto t = static_cast<Eigen::Index>(order_.size());
  const auto s = problem_.start();
  start_.resize(t);
  for (Eigen::Index i = 0; i < t; ++i) start_(i) = s[order_[static_cast<std::size_t>(i)]];
  row_sums_ = inverse_.rowwise().sum();
  weighted_cols_.noalias() = start_.transpose() * inverse_;
  ac_ = start_.dot(row_sums_);
}

void FundamentalState::after_update() {
  ++diag_.rank_one_updates;
  if (++since_refresh_ >= kRefreshPeriod) {
    ++diag_.refreshes;
    invert_from_scratch();
  } else {
    recompute_cache();
  }
}

void FundamentalState::refresh() { invert_from_scratch(); }

Eigen::RowVectorXd FundamentalState::transient_row(NodeId node) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(order_.size()));
  const double alpha = problem_.alpha();
  const auto s = problem_.start();
  if (alpha > 0.0) {
    for (NodeId q : problem_.queries()) {
      if (position_[q] >= 0) row(position_[q]) += alpha * s[q];
    }
  }
  const Graph& g = problem_.graph();
  const double step = (1.0 - alpha) / static_cast<double>(g.degree(node));
  for (NodeId j : g.neighbors(node)) {
    if (position_[j] >= 0) row(position_[j]) += step;
  }
  return row;
}

bool FundamentalState::rank_one_row_update(Eigen::Index row, const Eigen::RowVectorXd& b) {
  const Eigen::VectorXd fa = inverse_.col(row);
  const Eigen::RowVectorXd bf = b * inverse_;
  const double denominator = 1.0 + bf(row);
  if (!(std::abs(denominator) > kMinDenominator)) return false;
  inverse_.noalias() -= (fa / denominator) * bf;
  return true;
}

void FundamentalState::drop_transient(NodeId u) {
  const Eigen::Index p = position_[u];
  const auto last = static_cast<Eigen::Index>(order_.size()) - 1;
  if (p != last) {
    inverse_.row(p).swap(inverse_.row(last));
    inverse_.col(p).swap(inverse_.col(last));
    const NodeId moved = order_[static_cast<std::size_t>(last)];
    order_[static_cast<std::size_t>(p)] = moved;
    position_[moved] = p;
  }
  order_.pop_back();
  position_[u] = kAbsorbing;
  inverse_.conservativeResize(last, last);
}

double FundamentalState::ac_if_extended(NodeId u) const {
  if (!is_transient(u)) throw ValidationError("node " + std::to_string(u) + " is already absorbing");
  const Eigen::Index p = position_[u];
  return ac_ - weighted_cols_(p) * row_sums_(p) / inverse_(p, p);
}

void FundamentalState::extend(NodeId u) {
  if (u >= position_.size() || !is_transient(u)) {
    throw ValidationError("cannot extend with node " + std::to_string(u) + ": not transient");
  }
  // Making u absorbing replaces row u of A = I - P_TT by e_u^T, i.e.
  // A' = A + e_u b^T with b^T = P_TT(u, :). Column u then decouples and is
  // dropped.
  if (!rank_one_row_update(position_[u], transient_row(u))) {
    ++diag_.fallbacks;
    absorbing_ = absorbing_.with(u);
    invert_from_scratch();
    return;
  }
  drop_transient(u);
  absorbing_ = absorbing_.with(u);
  after_update();
}

FundamentalState FundamentalState::extended(NodeId u) const {
  FundamentalState next = *this;
  next.extend(u);
  return next;
}

void FundamentalState::swap(NodeId v, NodeId u) {
  if (u == v) throw ValidationError("swap requires distinct nodes");
  if (v >= position_.size() || !absorbing_.contains(v)) {
    throw ValidationError("swap: node " + std::to_string(v) + " is not absorbing");
  }
  if (u >= position_.size() || !is_transient(u)) {
    throw ValidationError("swap: node " + std::to_string(u) + " is not transient");
  }
  const NodeSet target = absorbing_.without(v).with(u);
  auto fall_back = [&] {
    ++diag_.fallbacks;
    absorbing_ = target;
    invert_from_scratch();
  };

  // Absorb u first, exactly as in extend(); releasing v first would leave
  // no absorbing node when |C| = 1 and the intermediate system singular.
  if (!rank_one_row_update(position_[u], transient_row(u))) {
    fall_back();
    return;
  }
  drop_transient(u);

  // Border F with v as an identity row: A_ext = [A, -P_Tv; 0, 1] has inverse
  // [F, F P_Tv; 0, 1].
  const auto m = static_cast<Eigen::Index>(order_.size());
  Eigen::VectorXd into_v(m);
  for (Eigen::Index i = 0; i < m; ++i) into_v(i) = problem_.transition(order_[static_cast<std::size_t>(i)], v);
  const Eigen::VectorXd border = inverse_ * into_v;
  inverse_.conservativeResize(m + 1, m + 1);
  inverse_.topRightCorner(m, 1) = border;
  inverse_.bottomRows(1).setZero();
  inverse_(m, m) = 1.0;
  order_.push_back(v);
  position_[v] = m;

  // The second rank-1 term restores v's transition row: A' = A_ext - e_v P(v, :).
  if (!rank_one_row_update(m, -transient_row(v))) {
    fall_back();
    return;
  }
  absorbing_ = target;
  after_update();
}

FundamentalState FundamentalState::swapped(NodeId v, NodeId u) const {
  FundamentalState next = *this;
  next.swap(v, u);
  return next;
}

double FundamentalState::residual() const {
  const auto t = static_cast<Eigen::Index>(order_.size());
  Eigen::MatrixXd system(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    for (Eigen::Index j = 0; j < t; ++j) {
      system(i, j) = (i == j ? 1.0 : 0.0) -
                     problem_.transition(order_[static_cast<std::size_t>(i)], order_[static_cast<std::size_t>(j)]);
    }
  }
  return (inverse_ * system - Eigen::MatrixXd::Identity(t, t)).norm();
}

Eigen::MatrixXd FundamentalState::inverse_in_node_order() const {
  const auto t = static_cast<Eigen::Index>(order_.size());
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(t));
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) {
    return order_[static_cast<std::size_t>(a)] < order_[static_cast<std::size_t>(b)];
  });
  Eigen::MatrixXd out(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    for (Eigen::Index j = 0; j < t; ++j) {
      out(i, j) = inverse_(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace arw
