#pragma once

#include <cstdint>
#include <vector>

#include "arw/problem.hpp"

namespace arw {

struct WalkStats {
  std::size_t samples = 0;  ///< samples that finished under the step cap
  double mean = 0.0;
  double stddev = 0.0;          ///< sample standard deviation
  double ci_half_width = 0.0;   ///< 99% normal interval, 2.576 sd / sqrt(samples)
  std::vector<std::size_t> absorbed_at;  ///< per node of C, in C's order; starts inside C count too
  std::size_t capped = 0;       ///< samples dropped at the step cap
};

struct SimulationOptions {
  std::size_t samples = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t step_cap = 10'000'000;
};

/// Monte-Carlo estimate of ac_Q(C) by running the restarting walk directly.
///
/// Samples are grouped in fixed chunks of kChunk; chunk c draws from
/// Rng(seed, c), so the output is identical for any worker count.
WalkStats simulate(const CentralityProblem& problem, const NodeSet& absorbing, const SimulationOptions& options);

inline constexpr std::size_t kChunk = 1024;

struct OptimalSet {
  NodeSet set;
  double ac = 0.0;
  std::size_t evaluated = 0;
};

/// Minimizes exact_ac over all k-subsets of D; the lexicographically first
/// subset wins ties. Refuses when C(|D|, k) exceeds `budget`.
OptimalSet exhaustive_opt(const CentralityProblem& problem, std::uint64_t budget = 1'000'000);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace arw
