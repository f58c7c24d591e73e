#include "arw/heuristics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "arw/errors.hpp"
#include "arw/pagerank.hpp"
#include "arw/rng.hpp"

namespace arw {

namespace {

// The k highest-scoring candidates, ties by smallest id.
NodeSet top_k(const NodeSet& candidates, const std::vector<double>& score, std::size_t k) {
  std::vector<NodeId> ranked = candidates.ids();
  std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) { return score[a] > score[b]; });
  ranked.resize(std::min(k, ranked.size()));
  return NodeSet(std::move(ranked));
}

Eigen::MatrixXd rows_of(const SpectralEmbedding& embedding, const NodeSet& nodes) {
  Eigen::MatrixXd points(static_cast<Eigen::Index>(nodes.size()), embedding.coordinates.cols());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    points.row(static_cast<Eigen::Index>(i)) = embedding.coordinates.row(nodes[i]);
  }
  return points;
}

void check_embedding(const CentralityProblem& problem, const SpectralEmbedding& embedding) {
  if (static_cast<std::size_t>(embedding.coordinates.rows()) != problem.num_nodes()) {
    throw ValidationError("embedding row count differs from node count");
  }
}

// For each centroid in order, take its quota of nearest unpicked candidates.
NodeSet pick_near_centroids(const CentralityProblem& problem, const SpectralEmbedding& embedding,
                            const KMeansResult& clusters, const std::vector<std::size_t>& quota) {
  const NodeSet& candidates = problem.candidates();
  std::vector<bool> taken(problem.num_nodes(), false);
  std::vector<NodeId> picked;
  for (std::size_t c = 0; c < quota.size(); ++c) {
    if (quota[c] == 0) continue;
    const Eigen::RowVectorXd centroid = clusters.centroids.row(static_cast<Eigen::Index>(c));
    std::vector<std::pair<double, NodeId>> by_distance;
    for (NodeId v : candidates) {
      if (!taken[v]) by_distance.emplace_back((embedding.coordinates.row(v) - centroid).squaredNorm(), v);
    }
    std::sort(by_distance.begin(), by_distance.end());
    const std::size_t take = std::min(quota[c], by_distance.size());
    for (std::size_t i = 0; i < take; ++i) {
      taken[by_distance[i].second] = true;
      picked.push_back(by_distance[i].second);
    }
  }
  return NodeSet(std::move(picked));
}

}  // namespace

SpectralEmbedding SpectralEmbedding::truncated(std::size_t d) const {
  if (d < 1 || d > dimension()) throw ValidationError("cannot truncate embedding to dimension " + std::to_string(d));
  const auto cols = static_cast<Eigen::Index>(d);
  return {coordinates.leftCols(cols), eigenvalues.head(cols)};
}

SpectralEmbedding spectral_embed(const Graph& g, std::size_t d) {
  const std::size_t n = g.num_nodes();
  if (!is_connected(g)) throw ValidationError("spectral embedding needs a connected graph");
  if (d < 1 || d + 1 > n) {
    throw ValidationError("embedding dimension " + std::to_string(d) + " outside [1, n-1]");
  }
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::VectorXd inv_sqrt_degree(size);
  for (NodeId v = 0; v < n; ++v) inv_sqrt_degree(v) = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));

  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Identity(size, size);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(i)) laplacian(i, j) -= inv_sqrt_degree(i) * inv_sqrt_degree(j);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");

  SpectralEmbedding out;
  const auto dim = static_cast<Eigen::Index>(d);
  out.eigenvalues = solver.eigenvalues().segment(1, dim);
  out.coordinates = inv_sqrt_degree.asDiagonal() * solver.eigenvectors().middleCols(1, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    auto column = out.coordinates.col(c);
    column.normalize();
    const double peak = column.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < size; ++i) {
      if (std::abs(column(i)) >= peak - 1e-9) {
        if (column(i) < 0) column = -column;
        break;
      }
    }
  }
  return out;
}

KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed) {
  const auto count = static_cast<std::size_t>(points.rows());
  if (k < 1 || k > count) {
    throw ValidationError("k-means with k=" + std::to_string(k) + " over " + std::to_string(count) + " points");
  }
  const Eigen::Index dim = points.cols();
  Rng rng(seed);

  // k-means++ seeding
  KMeansResult out;
  out.centroids.resize(static_cast<Eigen::Index>(k), dim);
  std::vector<bool> used(count, false);
  std::size_t first = rng.below(count);
  used[first] = true;
  out.centroids.row(0) = points.row(static_cast<Eigen::Index>(first));
  std::vector<double> nearest(count);
  for (std::size_t p = 0; p < count; ++p) {
    nearest[p] = (points.row(static_cast<Eigen::Index>(p)) - out.centroids.row(0)).squaredNorm();
  }
  for (std::size_t c = 1; c < k; ++c) {
    const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
    std::size_t chosen = count;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double running = 0.0;
      for (std::size_t p = 0; p < count; ++p) {
        running += nearest[p];
        if (nearest[p] > 0.0 && target < running) {
          chosen = p;
          break;
        }
      }
      if (chosen == count) {  // rounding at the tail
        for (std::size_t p = count; p-- > 0;) {
          if (nearest[p] > 0.0) {
            chosen = p;
            break;
          }
        }
      }
    } else {
      chosen = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
    }
    used[chosen] = true;
    out.centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(chosen));
    for (std::size_t p = 0; p < count; ++p) {
      nearest[p] = std::min(
          nearest[p], (points.row(static_cast<Eigen::Index>(p)) - out.centroids.row(static_cast<Eigen::Index>(c)))
                          .squaredNorm());
    }
  }

  constexpr std::size_t kMaxIterations = 300;
  out.assignment.assign(count, k);
  for (out.iterations = 0; out.iterations < kMaxIterations; ++out.iterations) {
    bool changed = false;
    double cost = 0.0;
    for (std::size_t p = 0; p < count; ++p) {
      std::size_t best = 0;
      double best_distance = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double distance =
            (points.row(static_cast<Eigen::Index>(p)) - out.centroids.row(static_cast<Eigen::Index>(c))).squaredNorm();
        if (distance < best_distance) {
          best_distance = distance;
          best = c;
        }
      }
      if (out.assignment[p] != best) {
        out.assignment[p] = best;
        changed = true;
      }
      cost += best_distance;
    }
    out.cost_history.push_back(cost);
    out.cost = cost;
    if (!changed) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), dim);
    std::vector<std::size_t> members(k, 0);
    for (std::size_t p = 0; p < count; ++p) {
      sums.row(static_cast<Eigen::Index>(out.assignment[p])) += points.row(static_cast<Eigen::Index>(p));
      ++members[out.assignment[p]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (members[c] > 0) {
        out.centroids.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) / static_cast<double>(members[c]);
      }
    }
  }

  out.sizes.assign(k, 0);
  for (auto a : out.assignment) ++out.sizes[a];
  return out;
}

std::vector<std::size_t> apportion(std::size_t total, const std::vector<std::size_t>& weights) {
  const std::size_t sum = std::accumulate(weights.begin(), weights.end(), std::size_t{0});
  std::vector<std::size_t> share(weights.size(), 0);
  if (sum == 0 || weights.empty()) throw ValidationError("apportion with zero total weight");
  std::vector<std::pair<std::size_t, std::size_t>> remainders;  // (numerator of remainder, index)
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    share[i] = total * weights[i] / sum;
    assigned += share[i];
    remainders.emplace_back(total * weights[i] % sum, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) ++share[remainders[i].second];
  return share;
}

NodeSet spectral_q(const CentralityProblem& problem, const SpectralEmbedding& embedding, std::uint64_t seed) {
  check_embedding(problem, embedding);
  const std::size_t k = problem.budget();
  const NodeSet& queries = problem.queries();
  const KMeansResult clusters = kmeans(rows_of(embedding, queries), std::min(k, queries.size()), seed);
  return pick_near_centroids(problem, embedding, clusters, apportion(k, clusters.sizes));
}

NodeSet spectral_c(const CentralityProblem& problem, const SpectralEmbedding& embedding, std::uint64_t seed) {
  check_embedding(problem, embedding);
  const std::size_t k = problem.budget();
  const KMeansResult clusters = kmeans(rows_of(embedding, problem.candidates()), k, seed);
  return pick_near_centroids(problem, embedding, clusters, apportion(k, clusters.sizes));
}

NodeSet spectral_d(const CentralityProblem& problem, const SpectralEmbedding& embedding, std::uint64_t seed) {
  check_embedding(problem, embedding);
  const std::size_t k = problem.budget();
  const NodeSet& queries = problem.queries();
  const KMeansResult clusters = kmeans(rows_of(embedding, queries), std::min(k, queries.size()), seed);
  std::vector<double> score(problem.num_nodes(), -std::numeric_limits<double>::infinity());
  for (NodeId v : problem.candidates()) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < clusters.centroids.rows(); ++c) {
      best = std::min(best, (embedding.coordinates.row(v) - clusters.centroids.row(c)).squaredNorm());
    }
    score[v] = -best;
  }
  return top_k(problem.candidates(), score, k);
}

NodeSet ppr_select(const CentralityProblem& problem) {
  const PageRankResult pr = personalized_pagerank(problem.graph(), problem.start(), problem.alpha());
  return top_k(problem.candidates(), pr.scores, problem.budget());
}

NodeSet degree_select(const CentralityProblem& problem) {
  const Graph& g = problem.graph();
  std::vector<double> score(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) score[v] = static_cast<double>(g.degree(v));
  return top_k(problem.candidates(), score, problem.budget());
}

std::vector<double> distance_centrality(const Graph& g, const NodeSet& queries) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint64_t> total(n, 0);
  std::vector<bool> unreachable(n, false);
  for (NodeId q : queries) {
    const auto dist = bfs_distances(g, q);
    for (NodeId v = 0; v < n; ++v) {
      if (dist[v] == kUnreachable) {
        unreachable[v] = true;
      } else {
        total[v] += dist[v];
      }
    }
  }
  std::vector<double> dc(n);
  for (NodeId v = 0; v < n; ++v) {
    if (unreachable[v]) {
      dc[v] = 0.0;
    } else if (total[v] == 0) {
      dc[v] = std::numeric_limits<double>::infinity();
    } else {
      dc[v] = 1.0 / static_cast<double>(total[v]);
    }
  }
  return dc;
}

NodeSet distance_select(const CentralityProblem& problem) {
  return top_k(problem.candidates(), distance_centrality(problem.graph(), problem.queries()), problem.budget());
}

}  // namespace arw
