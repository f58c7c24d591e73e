#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "arw/problem.hpp"

namespace arw {

/// Row i is the spectral coordinate of node i; column c is the random-walk
/// Laplacian eigenvector for the (c+2)-th smallest eigenvalue.
struct SpectralEmbedding {
  Eigen::MatrixXd coordinates;
  Eigen::VectorXd eigenvalues;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(coordinates.cols()); }
  /// The embedding restricted to its first d columns.
  SpectralEmbedding truncated(std::size_t d) const;
};

/// Eigenvectors of L = I - D^{-1} A for the d smallest nontrivial eigenvalues.
///
/// Solved through the symmetric L_sym = I - D^{-1/2} A D^{-1/2}; if L_sym v =
/// lambda v then u = D^{-1/2} v satisfies L u = lambda u. Each column is
/// scaled to unit length and its largest-magnitude entry (first on ties) made
/// positive. Requires a connected graph and 1 <= d <= n - 1.
SpectralEmbedding spectral_embed(const Graph& g, std::size_t d);

struct KMeansResult {
  Eigen::MatrixXd centroids;  ///< k x dim
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> sizes;
  double cost = 0.0;                ///< sum of squared distances to assigned centroid
  std::vector<double> cost_history;  ///< cost after each assignment step
  std::size_t iterations = 0;
};

/// Lloyd's algorithm from a k-means++ seeding, at most 300 iterations, stopping
/// when assignments repeat. Points are rows. An emptied cluster keeps its
/// previous centroid.
KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed);

/// Largest-remainder split of `total` proportional to `weights`; leftover
/// units go to the largest fractional parts, lower index first on ties.
std::vector<std::size_t> apportion(std::size_t total, const std::vector<std::size_t>& weights);

NodeSet spectral_q(const CentralityProblem& problem, const SpectralEmbedding& embedding, std::uint64_t seed);
NodeSet spectral_c(const CentralityProblem& problem, const SpectralEmbedding& embedding, std::uint64_t seed);
NodeSet spectral_d(const CentralityProblem& problem, const SpectralEmbedding& embedding, std::uint64_t seed);

/// Top-k of D by personalized PageRank with teleport alpha towards s.
NodeSet ppr_select(const CentralityProblem& problem);
NodeSet degree_select(const CentralityProblem& problem);
NodeSet distance_select(const CentralityProblem& problem);

/// dc(u) = 1 / sum_{q in Q} d(u, q); +inf when the sum is 0, 0 when some
/// query node is unreachable.
std::vector<double> distance_centrality(const Graph& g, const NodeSet& queries);

}  // namespace arw
