#pragma once

// Shared fixtures for the test binaries. The reference evaluator here builds
// the full transition matrix straight from the graph, without going through
// walk_model, so it can serve as an independent oracle.

#include <Eigen/Dense>
#include <algorithm>
#include <memory>
#include <vector>

#include "arw/graph.hpp"
#include "arw/problem.hpp"
#include "arw/rng.hpp"

namespace arw::testing {

inline std::shared_ptr<const Graph> share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

// Full n x n chain over all nodes, absorbing rows replaced by identity.
inline Eigen::MatrixXd reference_chain(const Graph& g, const std::vector<double>& s, double alpha,
                                       const NodeSet& absorbing) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (absorbing.contains(i)) {
      p(i, i) = 1.0;
      continue;
    }
    for (NodeId j : g.neighbors(i)) p(i, j) += (1.0 - alpha) / static_cast<double>(g.degree(i));
    for (NodeId j = 0; j < g.num_nodes(); ++j) p(i, j) += alpha * s[j];
  }
  return p;
}

// Expected steps to absorption from every node (0 on absorbing nodes).
inline Eigen::VectorXd reference_lengths(const Graph& g, const std::vector<double>& s, double alpha,
                                         const NodeSet& absorbing) {
  const Eigen::MatrixXd p = reference_chain(g, s, alpha, absorbing);
  const auto n = p.rows();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - p;
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
  for (NodeId c : absorbing) {
    a.row(c).setZero();
    a(c, c) = 1.0;
    rhs(c) = 0.0;
  }
  return a.fullPivLu().solve(rhs);
}

inline double reference_ac(const CentralityProblem& problem, const NodeSet& absorbing) {
  const std::vector<double> s(problem.start().begin(), problem.start().end());
  const Eigen::VectorXd h = reference_lengths(problem.graph(), s, problem.alpha(), absorbing);
  double total = 0.0;
  for (NodeId v = 0; v < problem.num_nodes(); ++v) total += s[v] * h(v);
  return total;
}

// (I - P_TT)^{-1} for the transient nodes of `absorbing`, in node order.
inline Eigen::MatrixXd reference_inverse(const CentralityProblem& problem, const NodeSet& absorbing) {
  const std::vector<double> s(problem.start().begin(), problem.start().end());
  const Eigen::MatrixXd p = reference_chain(problem.graph(), s, problem.alpha(), absorbing);
  std::vector<Eigen::Index> transient;
  for (NodeId v = 0; v < problem.num_nodes(); ++v) {
    if (!absorbing.contains(v)) transient.push_back(v);
  }
  const auto t = static_cast<Eigen::Index>(transient.size());
  Eigen::MatrixXd block(t, t);
  for (Eigen::Index a = 0; a < t; ++a) {
    for (Eigen::Index b = 0; b < t; ++b) block(a, b) = p(transient[a], transient[b]);
  }
  return (Eigen::MatrixXd::Identity(t, t) - block).inverse();
}

// Uniform random subset of {0..n-1} of the given size.
inline NodeSet random_subset(Rng& rng, std::size_t n, std::size_t size) {
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  all.resize(size);
  return NodeSet(std::move(all));
}

inline Graph random_graph(Rng& rng, std::size_t min_n, std::size_t max_n) {
  const std::size_t n = min_n + rng.below(max_n - min_n + 1);
  const std::size_t max_m = n * (n - 1) / 2;
  const std::size_t m = std::min(max_m, n - 1 + rng.below(2 * n));
  return random_connected_graph(n, m, rng.next_u64());
}

// Adds the endpoint of larger degree for every uncovered edge.
inline NodeSet greedy_vertex_cover(const Graph& g) {
  std::vector<bool> in(g.num_nodes(), false);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v && !in[u] && !in[v]) in[g.degree(u) >= g.degree(v) ? u : v] = true;
    }
  }
  std::vector<NodeId> cover;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (in[v]) cover.push_back(v);
  }
  return NodeSet(std::move(cover));
}

inline bool is_vertex_cover(const Graph& g, const NodeSet& c) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (!c.contains(u) && !c.contains(v)) return false;
    }
  }
  return true;
}

}  // namespace arw::testing
