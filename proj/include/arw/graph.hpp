#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace arw {

using NodeId = std::uint32_t;

/// Hop count; unreachable nodes carry kUnreachable.
using Hops = std::uint32_t;
inline constexpr Hops kUnreachable = std::numeric_limits<Hops>::max();

/// Sorted, duplicate-free set of dense node ids.
class NodeSet {
 public:
  NodeSet() = default;
  /// Sorts and deduplicates.
  explicit NodeSet(std::vector<NodeId> ids);
  NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(NodeId v) const noexcept;
  bool is_subset_of(const NodeSet& other) const noexcept;

  NodeSet with(NodeId v) const;
  NodeSet without(NodeId v) const;

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  NodeId operator[](std::size_t i) const noexcept { return ids_[i]; }
  const std::vector<NodeId>& ids() const noexcept { return ids_; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> ids_;
};

struct LoadDiagnostics {
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  std::size_t comment_lines = 0;
};

/// Undirected simple graph over dense ids 0..n-1. Immutable once built.
///
/// Every node has degree >= 1; construction rejects isolated nodes.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list over dense ids. Self-loops and duplicates are
  /// dropped and counted into `diag` when provided. Labels default to the
  /// decimal id when `labels` is empty.
  static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<std::string> labels = {}, LoadDiagnostics* diag = nullptr);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Reverse label lookup; throws ValidationError on unknown labels.
  NodeId id_of(const std::string& label) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<std::string> labels_;
};

/// Parses a whitespace-separated edge list. Lines starting with '#' and blank
/// lines are skipped; labels are mapped to ids in first-appearance order.
Graph load_edge_list(std::istream& in, LoadDiagnostics* diag = nullptr);
Graph load_edge_list_file(const std::string& path, LoadDiagnostics* diag = nullptr);

std::vector<Hops> bfs_distances(const Graph& g, NodeId source);
NodeSet ball(const Graph& g, NodeId center, Hops radius);
bool is_connected(const Graph& g);

/// Component label per node, components numbered in order of smallest member.
std::vector<std::size_t> connected_components(const Graph& g, std::size_t* count = nullptr);

/// Induced subgraph on the largest connected component (ties: the component
/// holding the smallest id). Labels are preserved.
Graph largest_component(const Graph& g);

// Fixture generators.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);  ///< center is id 0
Graph complete_graph(std::size_t n);
/// Two K_clique joined by a path with `bridge` interior nodes. Clique A is
/// ids [0, clique), the bridge follows, then clique B.
Graph barbell_graph(std::size_t clique, std::size_t bridge);
/// Uniform random spanning tree plus uniformly random extra edges up to m.
Graph random_connected_graph(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace arw
