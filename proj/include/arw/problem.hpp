#pragma once

#include <memory>
#include <span>
#include <vector>

#include "arw/graph.hpp"

namespace arw {

/// A k absorbing random-walk centrality instance: graph, query nodes Q,
/// candidates D, start distribution s supported on Q, restart probability
/// alpha and budget k.
///
/// Invariants are checked at construction: Q and D nonempty, k in [1, |D|],
/// s sums to one and vanishes off Q, alpha in [0, 1), and a connected graph
/// when alpha = 0.
class CentralityProblem {
 public:
  /// Uniform start distribution over Q.
  CentralityProblem(std::shared_ptr<const Graph> graph, NodeSet queries, NodeSet candidates, double alpha,
                    std::size_t budget);
  CentralityProblem(std::shared_ptr<const Graph> graph, NodeSet queries, NodeSet candidates,
                    std::vector<double> start, double alpha, std::size_t budget);

  const Graph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const noexcept { return graph_; }
  const NodeSet& queries() const noexcept { return queries_; }
  const NodeSet& candidates() const noexcept { return candidates_; }
  std::span<const double> start() const noexcept { return start_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t budget() const noexcept { return budget_; }
  std::size_t num_nodes() const noexcept { return graph_->num_nodes(); }

  CentralityProblem with_budget(std::size_t budget) const;
  CentralityProblem with_candidates(NodeSet candidates) const;

  /// P(i, j) of the restarting walk for a transient i.
  double transition(NodeId i, NodeId j) const;

 private:
  void validate() const;

  std::shared_ptr<const Graph> graph_;
  NodeSet queries_;
  NodeSet candidates_;
  std::vector<double> start_;
  double alpha_;
  std::size_t budget_;
  bool connected_ = true;
};

/// All node ids of g as a NodeSet.
NodeSet all_nodes(const Graph& g);

}  // namespace arw
