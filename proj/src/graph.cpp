#include "arw/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "arw/errors.hpp"
#include "arw/rng.hpp"

namespace arw {

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool NodeSet::contains(NodeId v) const noexcept {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

bool NodeSet::is_subset_of(const NodeSet& other) const noexcept {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

NodeSet NodeSet::with(NodeId v) const {
  NodeSet out = *this;
  auto it = std::lower_bound(out.ids_.begin(), out.ids_.end(), v);
  if (it == out.ids_.end() || *it != v) out.ids_.insert(it, v);
  return out;
}

NodeSet NodeSet::without(NodeId v) const {
  NodeSet out = *this;
  auto it = std::lower_bound(out.ids_.begin(), out.ids_.end(), v);
  if (it != out.ids_.end() && *it == v) out.ids_.erase(it);
  return out;
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                        std::vector<std::string> labels, LoadDiagnostics* diag) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(2 * edges.size());
  std::size_t loops = 0;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ValidationError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") references a node outside 0.." + std::to_string(n));
    }
    if (u == v) {
      ++loops;
      continue;
    }
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  const std::size_t before = arcs.size();
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw ValidationError("label count does not match node count");
  }

  Graph g;
  g.labels_ = std::move(labels);
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : arcs) ++g.offsets_[u + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.reserve(arcs.size());
  for (auto [u, v] : arcs) g.targets_.push_back(v);

  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) == 0) throw ValidationError("isolated node '" + g.labels_[v] + "'");
  }
  if (diag != nullptr) {
    diag->self_loops += loops;
    diag->duplicate_edges += (before - arcs.size()) / 2;
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

NodeId Graph::id_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ValidationError("unknown node label '" + label + "'");
  return static_cast<NodeId>(it - labels_.begin());
}

Graph load_edge_list(std::istream& in, LoadDiagnostics* diag) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  LoadDiagnostics local;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      ++local.comment_lines;
      continue;
    }
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b)) throw ParseError("expected two node labels", lineno);
    if (fields >> extra) throw ParseError("unexpected third field '" + extra + "'", lineno);
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    edges.emplace_back(u, v);
  }

  const std::size_t n = labels.size();
  Graph g = Graph::from_edges(n, edges, std::move(labels), &local);
  if (diag != nullptr) *diag = local;
  return g;
}

Graph load_edge_list_file(const std::string& path, LoadDiagnostics* diag) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return load_edge_list(in, diag);
}

std::vector<Hops> bfs_distances(const Graph& g, NodeId source) {
  std::vector<Hops> dist(g.num_nodes(), kUnreachable);
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

NodeSet ball(const Graph& g, NodeId center, Hops radius) {
  const auto dist = bfs_distances(g, center);
  std::vector<NodeId> members;
  for (NodeId v = 0; v < dist.size(); ++v) {
    if (dist[v] <= radius) members.push_back(v);
  }
  return NodeSet(std::move(members));
}

std::vector<std::size_t> connected_components(const Graph& g, std::size_t* count) {
  const std::size_t n = g.num_nodes();
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(n, unset);
  std::size_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (comp[root] != unset) continue;
    comp[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (comp[v] == unset) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return comp;
}

bool is_connected(const Graph& g) {
  std::size_t count = 0;
  connected_components(g, &count);
  return count <= 1;
}

Graph largest_component(const Graph& g) {
  std::size_t count = 0;
  const auto comp = connected_components(g, &count);
  if (count <= 1) return g;
  std::vector<std::size_t> sizes(count, 0);
  for (auto c : comp) ++sizes[c];
  const auto keep = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<NodeId> remap(g.num_nodes(), 0);
  std::vector<std::string> labels;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (comp[v] == keep) {
      remap[v] = static_cast<NodeId>(labels.size());
      labels.push_back(g.label(v));
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (comp[u] != keep) continue;
    for (NodeId v : g.neighbors(u)) {
      if (u < v) edges.emplace_back(remap[u], remap[v]);
    }
  }
  const std::size_t n = labels.size();
  return Graph::from_edges(n, edges, std::move(labels));
}

Graph path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

Graph barbell_graph(std::size_t clique, std::size_t bridge) {
  const std::size_t n = 2 * clique + bridge;
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto b0 = static_cast<NodeId>(clique + bridge);
  for (NodeId i = 0; i < clique; ++i) {
    for (NodeId j = i + 1; j < clique; ++j) {
      edges.emplace_back(i, j);
      edges.emplace_back(b0 + i, b0 + j);
    }
  }
  // clique A's last node -> bridge -> clique B's first node
  NodeId prev = static_cast<NodeId>(clique - 1);
  for (NodeId i = 0; i < bridge; ++i) {
    const auto cur = static_cast<NodeId>(clique + i);
    edges.emplace_back(prev, cur);
    prev = cur;
  }
  edges.emplace_back(prev, b0);
  return Graph::from_edges(n, edges);
}

Graph random_connected_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw ValidationError("random graph needs at least 2 nodes");
  if (m + 1 < n || m > n * (n - 1) / 2) {
    throw ValidationError("edge count " + std::to_string(m) + " infeasible for a connected simple graph on " +
                          std::to_string(n) + " nodes");
  }
  Rng rng(seed);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  auto add = [&](NodeId u, NodeId v) {
    if (u == v || present[u][v]) return false;
    present[u][v] = present[v][u] = true;
    edges.emplace_back(std::min(u, v), std::max(u, v));
    return true;
  };
  // random recursive tree over a shuffled order keeps the graph connected
  for (std::size_t i = 1; i < n; ++i) add(order[i], order[rng.below(i)]);
  while (edges.size() < m) {
    add(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)));
  }
  return Graph::from_edges(n, edges);
}

}  // namespace arw
