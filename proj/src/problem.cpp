#include "arw/problem.hpp"

#include <cmath>
#include <numeric>

#include "arw/errors.hpp"

namespace arw {

namespace {

std::vector<double> uniform_start(std::size_t n, const NodeSet& queries) {
  std::vector<double> s(n, 0.0);
  for (NodeId q : queries) {
    if (q < n) s[q] = 1.0 / static_cast<double>(queries.size());
  }
  return s;
}

}  // namespace

CentralityProblem::CentralityProblem(std::shared_ptr<const Graph> graph, NodeSet queries, NodeSet candidates,
                                     double alpha, std::size_t budget)
    : CentralityProblem(graph, queries, std::move(candidates),
                        uniform_start(graph ? graph->num_nodes() : 0, queries), alpha, budget) {}

CentralityProblem::CentralityProblem(std::shared_ptr<const Graph> graph, NodeSet queries, NodeSet candidates,
                                     std::vector<double> start, double alpha, std::size_t budget)
    : graph_(std::move(graph)),
      queries_(std::move(queries)),
      candidates_(std::move(candidates)),
      start_(std::move(start)),
      alpha_(alpha),
      budget_(budget) {
  if (!graph_) throw ValidationError("problem has no graph");
  connected_ = is_connected(*graph_);
  validate();
}

void CentralityProblem::validate() const {
  const std::size_t n = graph_->num_nodes();
  if (queries_.empty()) throw ValidationError("query set is empty");
  if (candidates_.empty()) throw ValidationError("candidate set is empty");
  if (queries_.ids().back() >= n || candidates_.ids().back() >= n) {
    throw ValidationError("query or candidate id out of range");
  }
  if (budget_ < 1 || budget_ > candidates_.size()) {
    throw ValidationError("budget k=" + std::to_string(budget_) + " outside [1, |D|=" +
                          std::to_string(candidates_.size()) + "]");
  }
  if (!(alpha_ >= 0.0 && alpha_ < 1.0)) throw ValidationError("restart probability must lie in [0, 1)");
  if (alpha_ == 0.0 && !connected_) {
    throw ValidationError("alpha = 0 requires a connected graph");
  }
  if (start_.size() != n) throw ValidationError("start vector dimension differs from node count");
  double total = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    if (!(start_[v] >= 0.0) || !std::isfinite(start_[v])) throw ValidationError("start vector has invalid entry");
    if (start_[v] != 0.0 && !queries_.contains(v)) {
      throw ValidationError("start probability on non-query node " + graph_->label(v));
    }
    total += start_[v];
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("start vector does not sum to 1");
}

CentralityProblem CentralityProblem::with_budget(std::size_t budget) const {
  CentralityProblem copy = *this;
  copy.budget_ = budget;
  copy.validate();
  return copy;
}

CentralityProblem CentralityProblem::with_candidates(NodeSet candidates) const {
  CentralityProblem copy = *this;
  copy.candidates_ = std::move(candidates);
  copy.validate();
  return copy;
}

double CentralityProblem::transition(NodeId i, NodeId j) const {
  double p = alpha_ * start_[j];
  if (graph_->has_edge(i, j)) p += (1.0 - alpha_) / static_cast<double>(graph_->degree(i));
  return p;
}

NodeSet all_nodes(const Graph& g) {
  std::vector<NodeId> ids(g.num_nodes());
  std::iota(ids.begin(), ids.end(), 0);
  return NodeSet(std::move(ids));
}

}  // namespace arw
