#include "arw/walk_model.hpp"

#include <cmath>
#include <sstream>

#include "arw/errors.hpp"

namespace arw {

std::string describe(const NodeSet& set) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < set.size(); ++i) out << (i ? "," : "") << set[i];
  out << '}';
  return out.str();
}

TransitionSystem build_transition(const CentralityProblem& problem, const NodeSet& absorbing) {
  const std::size_t n = problem.num_nodes();
  if (absorbing.empty()) throw ValidationError("absorbing set is empty");
  if (absorbing.ids().back() >= n) throw ValidationError("absorbing set " + describe(absorbing) + " not within V");

  TransitionSystem ts;
  ts.absorbing = absorbing;
  ts.position.assign(n, kAbsorbing);
  std::vector<std::ptrdiff_t> absorbing_column(n, -1);
  for (std::size_t c = 0; c < absorbing.size(); ++c) absorbing_column[absorbing[c]] = static_cast<std::ptrdiff_t>(c);
  for (NodeId v = 0; v < n; ++v) {
    if (absorbing_column[v] < 0) {
      ts.position[v] = static_cast<std::ptrdiff_t>(ts.transient_order.size());
      ts.transient_order.push_back(v);
    }
  }

  const auto t = static_cast<Eigen::Index>(ts.transient_order.size());
  ts.transient_block = Eigen::MatrixXd::Zero(t, t);
  ts.absorbing_block = Eigen::MatrixXd::Zero(t, static_cast<Eigen::Index>(absorbing.size()));

  const Graph& g = problem.graph();
  const double alpha = problem.alpha();
  const auto start = problem.start();
  auto route = [&](Eigen::Index row, NodeId j, double p) {
    if (ts.position[j] != kAbsorbing) {
      ts.transient_block(row, ts.position[j]) += p;
    } else {
      ts.absorbing_block(row, absorbing_column[j]) += p;
    }
  };
  for (Eigen::Index row = 0; row < t; ++row) {
    const NodeId i = ts.transient_order[static_cast<std::size_t>(row)];
    if (alpha > 0.0) {
      for (NodeId q : problem.queries()) route(row, q, alpha * start[q]);
    }
    const double step = (1.0 - alpha) / static_cast<double>(g.degree(i));
    for (NodeId j : g.neighbors(i)) route(row, j, step);
  }
  return ts;
}

namespace {

// Solves (I - P_TT) y = 1; y is the absorption length per transient row.
Eigen::VectorXd solve_lengths(const TransitionSystem& ts) {
  const Eigen::Index t = ts.transient_block.rows();
  if (t == 0) return {};
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(t, t) - ts.transient_block;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const Eigen::VectorXd y = lu.solve(Eigen::VectorXd::Ones(t));
  if (lu.rcond() < 1e-14 || !y.allFinite()) {
    throw NumericalError("I - P_TT is singular for absorbing set " + describe(ts.absorbing) +
                         "; some walks are never absorbed");
  }
  return y;
}

}  // namespace

Eigen::VectorXd absorption_lengths(const CentralityProblem& problem, const NodeSet& absorbing) {
  const TransitionSystem ts = build_transition(problem, absorbing);
  const Eigen::VectorXd y = solve_lengths(ts);
  Eigen::VectorXd lengths = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.num_nodes()));
  for (std::size_t i = 0; i < ts.transient_order.size(); ++i) {
    lengths(ts.transient_order[i]) = y(static_cast<Eigen::Index>(i));
  }
  return lengths;
}

double exact_ac(const CentralityProblem& problem, const NodeSet& absorbing) {
  const Eigen::VectorXd lengths = absorption_lengths(problem, absorbing);
  const auto start = problem.start();
  double ac = 0.0;
  for (NodeId q : problem.queries()) ac += start[q] * lengths(q);
  return ac;
}

ApproximateAc approximate_ac(const TransitionSystem& ts, std::span<const double> start, double epsilon,
                             std::size_t max_iterations) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  const auto t = static_cast<Eigen::Index>(ts.num_transient());
  Eigen::RowVectorXd x(t);
  for (Eigen::Index i = 0; i < t; ++i) x(i) = start[ts.transient_order[static_cast<std::size_t>(i)]];

  ApproximateAc out;
  double delta = x.sum();
  out.value = delta;
  out.last_increment = delta;
  Eigen::RowVectorXd next(t);
  while (delta >= epsilon) {
    if (out.iterations == max_iterations) {
      throw NumericalError("approximate ac did not converge within " + std::to_string(max_iterations) +
                           " iterations (last increment " + std::to_string(delta) + ")");
    }
    next.noalias() = x * ts.transient_block;
    x.swap(next);
    delta = x.sum();
    out.value += delta;
    out.last_increment = delta;
    ++out.iterations;
  }
  return out;
}

}  // namespace arw
