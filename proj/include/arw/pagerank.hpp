#pragma once

#include <span>
#include <vector>

#include "arw/graph.hpp"

namespace arw {

struct PageRankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
  double last_change = 0.0;  ///< L1 norm of the final update
};

/// Personalized PageRank by power iteration on
///   pi <- (1 - teleport) pi P_rw + teleport * personalization,
/// started from the personalization vector. Throws NumericalError if the L1
/// change has not dropped to `tolerance` within `max_iterations`.
PageRankResult personalized_pagerank(const Graph& g, std::span<const double> personalization, double teleport,
                                     double tolerance = 1e-10, std::size_t max_iterations = 10'000);

}  // namespace arw
