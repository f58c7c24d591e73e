#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "arw/fundamental_state.hpp"
#include "arw/problem.hpp"

namespace arw {

struct GreedyOptions {
  /// First-pick pool size when pruning; defaults to min(|D|, 20).
  std::optional<std::size_t> prune_t;
  /// Scan every candidate for the first pick instead of the PageRank pool.
  bool exact_first = false;
  /// Also compute m_Q over all of D so that the result carries a gain.
  bool compute_gain = true;
};

struct SelectionStep {
  NodeId node;
  double ac;  ///< ac of the chosen prefix after adding `node`
  std::chrono::duration<double> elapsed;  ///< since the run started
};

struct SelectionResult {
  std::vector<NodeId> chosen;  ///< in selection order
  double ac = 0.0;
  double gain = 0.0;
  double best_singleton_ac = 0.0;  ///< m_Q
  std::vector<SelectionStep> steps;
  std::chrono::duration<double> elapsed{0};
  std::size_t evaluations = 0;  ///< candidate sets scored during selection
  UpdateDiagnostics updates;
};

struct Singleton {
  NodeId node;
  double ac;
};

/// argmin over `pool` of ac({v}) using one inversion plus swaps. Ties go to
/// the smallest id.
Singleton best_singleton(const CentralityProblem& problem, const NodeSet& pool, std::size_t* evaluations = nullptr);
/// Over the problem's candidate set D, giving (argmin, m_Q).
Singleton best_singleton(const CentralityProblem& problem);

/// acg_Q(C) = m_Q - ac_Q(C).
double gain(const CentralityProblem& problem, const NodeSet& absorbing, double best_singleton_ac);

/// The greedy optimizer: best singleton first, then k-1 extensions each
/// taking the candidate that minimizes ac (smallest id on ties).
SelectionResult greedy(const CentralityProblem& problem, const GreedyOptions& options = {});

/// Default first-pick pool size.
std::size_t default_prune_t(const CentralityProblem& problem);

/// True when `candidate` beats `incumbent` by more than rounding noise.
bool strictly_better(double candidate, double incumbent);

}  // namespace arw
