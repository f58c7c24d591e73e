#include "arw/pagerank.hpp"

#include <cmath>
#include <string>

#include "arw/errors.hpp"

namespace arw {

PageRankResult personalized_pagerank(const Graph& g, std::span<const double> personalization, double teleport,
                                     double tolerance, std::size_t max_iterations) {
  const std::size_t n = g.num_nodes();
  if (personalization.size() != n) throw ValidationError("personalization vector has wrong dimension");

  PageRankResult out;
  std::vector<double> pi(personalization.begin(), personalization.end());
  std::vector<double> next(n);
  while (out.iterations < max_iterations) {
    for (std::size_t j = 0; j < n; ++j) next[j] = teleport * personalization[j];
    for (NodeId i = 0; i < n; ++i) {
      const double share = (1.0 - teleport) * pi[i] / static_cast<double>(g.degree(i));
      for (NodeId j : g.neighbors(i)) next[j] += share;
    }
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) change += std::abs(next[j] - pi[j]);
    pi.swap(next);
    ++out.iterations;
    out.last_change = change;
    if (change <= tolerance) {
      out.scores = std::move(pi);
      return out;
    }
  }
  throw NumericalError("PageRank did not converge in " + std::to_string(max_iterations) +
                       " iterations (last L1 change " + std::to_string(out.last_change) + ")");
}

}  // namespace arw
