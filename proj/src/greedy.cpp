#include "arw/greedy.hpp"

#include <algorithm>
#include <cmath>

#include "arw/errors.hpp"
#include "arw/pagerank.hpp"
#include "arw/walk_model.hpp"

namespace arw {

bool strictly_better(double candidate, double incumbent) {
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

std::size_t default_prune_t(const CentralityProblem& problem) {
  return std::min<std::size_t>(problem.candidates().size(), 20);
}

Singleton best_singleton(const CentralityProblem& problem, const NodeSet& pool, std::size_t* evaluations) {
  if (pool.empty()) throw ValidationError("best_singleton over an empty pool");
  const NodeId seed = pool[0];
  const FundamentalState base(problem, NodeSet{seed});
  Singleton best{seed, base.ac()};
  std::size_t count = 1;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const NodeId u = pool[i];
    const double ac = base.swapped(seed, u).ac();
    ++count;
    if (strictly_better(ac, best.ac)) best = {u, ac};
  }
  if (evaluations != nullptr) *evaluations += count;
  best.ac = exact_ac(problem, NodeSet{best.node});
  return best;
}

Singleton best_singleton(const CentralityProblem& problem) { return best_singleton(problem, problem.candidates()); }

double gain(const CentralityProblem& problem, const NodeSet& absorbing, double best_singleton_ac) {
  return best_singleton_ac - exact_ac(problem, absorbing);
}

namespace {

// Top-t candidates by personalized PageRank, ties by id. Empty when the
// power iteration does not converge (possible only for alpha = 0).
NodeSet pagerank_pool(const CentralityProblem& problem, std::size_t t) {
  PageRankResult pr;
  try {
    pr = personalized_pagerank(problem.graph(), problem.start(), problem.alpha());
  } catch (const NumericalError&) {
    return {};
  }
  std::vector<NodeId> ranked = problem.candidates().ids();
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](NodeId a, NodeId b) { return pr.scores[a] > pr.scores[b]; });
  ranked.resize(std::min(t, ranked.size()));
  return NodeSet(std::move(ranked));
}

}  // namespace

SelectionResult greedy(const CentralityProblem& problem, const GreedyOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const NodeSet& candidates = problem.candidates();
  const std::size_t k = problem.budget();
  if (k > candidates.size()) throw ValidationError("k exceeds |D|");

  SelectionResult result;
  NodeSet pool = candidates;
  if (!options.exact_first) {
    const std::size_t t = options.prune_t.value_or(default_prune_t(problem));
    if (t == 0) throw ValidationError("prune_t must be positive");
    NodeSet pruned = pagerank_pool(problem, t);
    if (!pruned.empty()) pool = std::move(pruned);
  }

  const Singleton first = best_singleton(problem, pool, &result.evaluations);
  if (options.compute_gain) {
    result.best_singleton_ac =
        pool.size() == candidates.size() ? first.ac : best_singleton(problem, candidates).ac;
  }

  FundamentalState state(problem, NodeSet{first.node});
  result.chosen.push_back(first.node);
  result.steps.push_back({first.node, state.ac(), std::chrono::steady_clock::now() - started});

  for (std::size_t step = 1; step < k; ++step) {
    NodeId pick = 0;
    double pick_ac = 0.0;
    bool have = false;
    for (NodeId u : candidates) {
      if (!state.is_transient(u)) continue;
      const double ac = state.ac_if_extended(u);
      ++result.evaluations;
      if (!have || strictly_better(ac, pick_ac)) {
        pick = u;
        pick_ac = ac;
        have = true;
      }
    }
    state.extend(pick);
    result.chosen.push_back(pick);
    result.steps.push_back({pick, state.ac(), std::chrono::steady_clock::now() - started});
  }

  result.ac = exact_ac(problem, NodeSet(result.chosen));
  result.gain = options.compute_gain ? result.best_singleton_ac - result.ac : std::nan("");
  result.updates = state.diagnostics();
  result.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

}  // namespace arw
