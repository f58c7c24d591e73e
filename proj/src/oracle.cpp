#include "arw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "arw/errors.hpp"
#include "arw/greedy.hpp"
#include "arw/parallel.hpp"
#include "arw/rng.hpp"
#include "arw/walk_model.hpp"

namespace arw {

namespace {

// Inverse-CDF sampler over the support of s.
class StartSampler {
 public:
  explicit StartSampler(const CentralityProblem& problem) {
    const auto s = problem.start();
    double running = 0.0;
    for (NodeId q : problem.queries()) {
      if (s[q] <= 0.0) continue;
      running += s[q];
      cumulative_.push_back(running);
      nodes_.push_back(q);
    }
    total_ = running;
  }

  NodeId draw(Rng& rng) const {
    const double target = rng.uniform() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) --it;
    return nodes_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  std::vector<double> cumulative_;
  std::vector<NodeId> nodes_;
  double total_ = 0.0;
};

struct ChunkTally {
  std::uint64_t finished = 0;
  unsigned __int128 sum = 0;
  unsigned __int128 sum_squares = 0;
  std::uint64_t capped = 0;
  std::vector<std::size_t> absorbed_at;
};

}  // namespace

WalkStats simulate(const CentralityProblem& problem, const NodeSet& absorbing, const SimulationOptions& options) {
  if (options.samples < 1) throw ValidationError("simulate needs at least one sample");
  if (absorbing.empty()) throw ValidationError("absorbing set is empty");
  const Graph& g = problem.graph();
  const std::size_t n = g.num_nodes();
  if (absorbing.ids().back() >= n) throw ValidationError("absorbing set not within V");

  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t c = 0; c < absorbing.size(); ++c) slot[absorbing[c]] = static_cast<std::ptrdiff_t>(c);
  const StartSampler sampler(problem);
  const double alpha = problem.alpha();

  const std::size_t chunks = (options.samples + kChunk - 1) / kChunk;
  std::vector<ChunkTally> tallies(chunks);
  parallel_for(chunks, [&](std::size_t chunk) {
    Rng rng(options.seed, chunk);
    ChunkTally& tally = tallies[chunk];
    tally.absorbed_at.assign(absorbing.size(), 0);
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(options.samples, begin + kChunk);
    for (std::size_t sample = begin; sample < end; ++sample) {
      NodeId at = sampler.draw(rng);
      std::uint64_t length = 0;
      while (slot[at] < 0 && length < options.step_cap) {
        if (alpha > 0.0 && rng.bernoulli(alpha)) {
          at = sampler.draw(rng);
        } else {
          const auto nb = g.neighbors(at);
          at = nb[rng.below(nb.size())];
        }
        ++length;
      }
      if (slot[at] < 0) {
        ++tally.capped;
        continue;
      }
      ++tally.finished;
      ++tally.absorbed_at[static_cast<std::size_t>(slot[at])];
      tally.sum += length;
      tally.sum_squares += static_cast<unsigned __int128>(length) * length;
    }
  });

  WalkStats stats;
  stats.absorbed_at.assign(absorbing.size(), 0);
  unsigned __int128 sum = 0;
  unsigned __int128 sum_squares = 0;
  for (const ChunkTally& tally : tallies) {
    stats.samples += tally.finished;
    stats.capped += tally.capped;
    sum += tally.sum;
    sum_squares += tally.sum_squares;
    for (std::size_t c = 0; c < absorbing.size(); ++c) stats.absorbed_at[c] += tally.absorbed_at[c];
  }
  if (stats.samples == 0) return stats;
  const auto count = static_cast<long double>(stats.samples);
  const long double mean = static_cast<long double>(sum) / count;
  stats.mean = static_cast<double>(mean);
  if (stats.samples > 1) {
    const long double ss = static_cast<long double>(sum_squares) - count * mean * mean;
    stats.stddev = static_cast<double>(std::sqrt(std::max(0.0L, ss / (count - 1))));
  }
  stats.ci_half_width = 2.576 * stats.stddev / std::sqrt(static_cast<double>(stats.samples));
  return stats;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 value = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(value);
}

OptimalSet exhaustive_opt(const CentralityProblem& problem, std::uint64_t budget) {
  const NodeSet& candidates = problem.candidates();
  const std::size_t k = problem.budget();
  const std::uint64_t subsets = binomial(candidates.size(), k);
  if (subsets > budget) {
    throw ValidationError("exhaustive search refused: " + std::to_string(subsets) + " subsets exceed budget " +
                          std::to_string(budget));
  }

  constexpr std::size_t kBatch = 4096;
  OptimalSet best;
  bool have = false;
  std::vector<std::size_t> index(k);
  std::iota(index.begin(), index.end(), 0);
  bool exhausted = false;
  std::vector<NodeSet> batch;
  std::vector<double> values;

  auto advance = [&] {
    // next k-combination of [0, |D|) in lexicographic order
    std::size_t i = k;
    while (i > 0 && index[i - 1] == candidates.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++index[i - 1];
    for (std::size_t j = i; j < k; ++j) index[j] = index[j - 1] + 1;
    return true;
  };

  while (!exhausted) {
    batch.clear();
    while (batch.size() < kBatch && !exhausted) {
      std::vector<NodeId> members(k);
      for (std::size_t j = 0; j < k; ++j) members[j] = candidates[index[j]];
      batch.emplace_back(std::move(members));
      exhausted = !advance();
    }
    values.assign(batch.size(), 0.0);
    parallel_for(batch.size(), [&](std::size_t i) { values[i] = exact_ac(problem, batch[i]); });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!have || strictly_better(values[i], best.ac)) {
        best.set = batch[i];
        best.ac = values[i];
        have = true;
      }
    }
    best.evaluated += batch.size();
  }
  return best;
}

}  // namespace arw
