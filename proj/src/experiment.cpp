#include "arw/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <tuple>
#include <sstream>

#include "arw/errors.hpp"
#include "arw/greedy.hpp"
#include "arw/heuristics.hpp"
#include "arw/parallel.hpp"
#include "arw/problem.hpp"
#include "arw/rng.hpp"
#include "arw/walk_model.hpp"

namespace arw {

namespace {

constexpr std::string_view kKarate =
    "0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n0 7\n0 8\n"
    "0 10\n0 11\n0 12\n0 13\n0 17\n0 19\n0 21\n0 31\n"
    "1 2\n1 3\n1 7\n1 13\n1 17\n1 19\n1 21\n1 30\n"
    "2 3\n2 7\n2 8\n2 9\n2 13\n2 27\n2 28\n2 32\n"
    "3 7\n3 12\n3 13\n4 6\n4 10\n5 6\n5 10\n5 16\n"
    "6 16\n8 30\n8 32\n8 33\n9 33\n13 33\n14 32\n14 33\n"
    "15 32\n15 33\n18 32\n18 33\n19 33\n20 32\n20 33\n22 32\n"
    "22 33\n23 25\n23 27\n23 29\n23 32\n23 33\n24 25\n24 27\n"
    "24 31\n25 31\n26 29\n26 33\n27 33\n28 31\n28 33\n29 32\n"
    "29 33\n30 32\n30 33\n31 32\n31 33\n32 33\n";

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  return parts;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) throw ValidationError("invalid value '" + text + "' for " + key);
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError("invalid boolean '" + text + "' for " + key);
}

std::string format_real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

bool is_spectral(const std::string& name) {
  return name == "spectral_q" || name == "spectral_c" || name == "spectral_d";
}

}  // namespace

std::string_view karate_edge_list() { return kKarate; }

std::string to_string(CandidateMode mode) { return mode == CandidateMode::all ? "all" : "query"; }

CandidateMode parse_candidate_mode(const std::string& text) {
  if (text == "all") return CandidateMode::all;
  if (text == "query") return CandidateMode::query;
  throw ValidationError("candidate mode must be 'all' or 'query', got '" + text + "'");
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"greedy", "spectral_q", "spectral_c", "spectral_d",
                                              "ppr",    "degree",     "distance"};
  return names;
}

void ExperimentSpec::validate() const {
  if (dataset.empty()) throw ValidationError("no dataset given");
  if (seeds < 1) throw ValidationError("seed count must be at least 1");
  if (queries < seeds) throw ValidationError("query count q must be at least the seed count s");
  if (radius < 1) throw ValidationError("ball radius must be at least 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in [0, 1)");
  if (k_min < 1 || k_min > k_max) throw ValidationError("k range must satisfy 1 <= k_min <= k_max");
  if (candidates == CandidateMode::query && k_max > queries) {
    throw ValidationError("k range exceeds q when candidates are the query nodes");
  }
  if (algorithms.empty()) throw ValidationError("no algorithms selected");
  for (const auto& name : algorithms) {
    const auto& known = algorithm_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ValidationError("unknown algorithm '" + name + "'");
    }
  }
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (prune_t && *prune_t == 0) throw ValidationError("prune_t must be positive");
}

void ExperimentSpec::set(const std::string& key, const std::string& value) {
  if (key == "dataset") {
    dataset = value;
  } else if (key == "seeds") {
    seeds = parse_number<std::size_t>(key, value);
  } else if (key == "radius") {
    radius = parse_number<Hops>(key, value);
  } else if (key == "queries") {
    queries = parse_number<std::size_t>(key, value);
  } else if (key == "alpha") {
    alpha = parse_number<double>(key, value);
  } else if (key == "candidates") {
    candidates = parse_candidate_mode(value);
  } else if (key == "k") {
    const auto dots = value.find("..");
    if (dots == std::string::npos) {
      k_min = k_max = parse_number<std::size_t>(key, value);
    } else {
      k_min = parse_number<std::size_t>(key, trim(value.substr(0, dots)));
      k_max = parse_number<std::size_t>(key, trim(value.substr(dots + 2)));
    }
  } else if (key == "algorithms") {
    algorithms = split(value, ',');
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "epsilon") {
    epsilon = parse_number<double>(key, value);
  } else if (key == "prune_t") {
    prune_t = parse_number<std::size_t>(key, value);
  } else if (key == "exact_first") {
    exact_first = parse_bool(key, value);
  } else if (key == "greedy_max_nodes") {
    greedy_max_nodes = parse_number<std::size_t>(key, value);
  } else if (key == "record_time") {
    record_time = parse_bool(key, value);
  } else {
    throw ValidationError("unknown spec key '" + key + "'");
  }
}

ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
    try {
      spec.set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open spec file '" + path + "'");
  return parse_spec(in);
}

Dataset load_dataset(const std::string& reference) {
  Dataset out;
  Graph graph;
  const auto parts = split(reference, ':');
  if (reference == "karate") {
    std::istringstream in{std::string(kKarate)};
    graph = load_edge_list(in);
    out.name = "karate";
  } else if (parts.size() == 3 && parts[0] == "barbell") {
    graph = barbell_graph(parse_number<std::size_t>("barbell clique", parts[1]),
                          parse_number<std::size_t>("barbell bridge", parts[2]));
    out.name = reference;
  } else if (parts.size() == 4 && parts[0] == "random") {
    graph = random_connected_graph(parse_number<std::size_t>("random n", parts[1]),
                                   parse_number<std::size_t>("random m", parts[2]),
                                   parse_number<std::uint64_t>("random seed", parts[3]));
    out.name = reference;
  } else {
    LoadDiagnostics diag;
    graph = load_edge_list_file(reference, &diag);
    out.name = std::filesystem::path(reference).stem().string();
    if (diag.duplicate_edges > 0 || diag.self_loops > 0) {
      out.warnings.push_back("dropped " + std::to_string(diag.duplicate_edges) + " duplicate edges and " +
                             std::to_string(diag.self_loops) + " self-loops");
    }
  }
  if (!is_connected(graph)) {
    const std::size_t before = graph.num_nodes();
    graph = largest_component(graph);
    out.warnings.push_back("graph is disconnected; kept largest component (" + std::to_string(graph.num_nodes()) +
                           " of " + std::to_string(before) + " nodes)");
  }
  out.graph = std::make_shared<const Graph>(std::move(graph));
  return out;
}

NodeSet generate_queries(const Graph& g, std::size_t seeds, Hops radius, std::size_t size, std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  if (seeds < 1 || seeds > n) throw ValidationError("seed count must lie in [1, n]");
  if (size < 1) throw ValidationError("query count must be positive");
  Rng rng(seed);
  std::vector<NodeId> nodes(n);
  std::size_t union_size = 0;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::iota(nodes.begin(), nodes.end(), 0);
    for (std::size_t i = 0; i < seeds; ++i) std::swap(nodes[i], nodes[i + rng.below(n - i)]);
    std::vector<NodeId> merged;
    for (std::size_t i = 0; i < seeds; ++i) {
      const NodeSet b = ball(g, nodes[i], radius);
      merged.insert(merged.end(), b.begin(), b.end());
    }
    std::vector<NodeId> pool = NodeSet(std::move(merged)).ids();
    union_size = pool.size();
    if (union_size < size) continue;
    for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(size);
    return NodeSet(std::move(pool));
  }
  throw ValidationError("query generation failed: union of balls has " + std::to_string(union_size) +
                        " nodes, fewer than q=" + std::to_string(size) + " after 100 attempts");
}

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  return run_experiment(spec, load_dataset(spec.dataset));
}

ExperimentOutput run_experiment(const ExperimentSpec& spec, const Dataset& dataset) {
  spec.validate();
  const auto& graph = dataset.graph;
  const Graph& g = *graph;
  ExperimentOutput out;
  out.warnings = dataset.warnings;
  out.queries = generate_queries(g, spec.seeds, spec.radius, spec.queries, spec.seed);
  const NodeSet candidates = spec.candidates == CandidateMode::all ? all_nodes(g) : out.queries;
  if (spec.k_max > candidates.size()) {
    throw ValidationError("k_max=" + std::to_string(spec.k_max) + " exceeds |D|=" + std::to_string(candidates.size()));
  }
  const CentralityProblem base(graph, out.queries, candidates, spec.alpha, spec.k_max);
  const double best_single = best_singleton(base).ac;

  std::optional<SpectralEmbedding> embedding;
  if (std::any_of(spec.algorithms.begin(), spec.algorithms.end(), is_spectral)) {
    embedding = spectral_embed(g, std::min(spec.k_max, g.num_nodes() - 1));
  }

  using Clock = std::chrono::steady_clock;
  struct Cell {
    std::vector<ResultRow> rows;
    std::vector<std::string> warnings;
  };
  std::vector<Cell> cells(spec.algorithms.size());

  auto make_row = [&](const std::string& algorithm, const CentralityProblem& problem, const NodeSet& chosen,
                      double seconds) {
    ResultRow row;
    row.dataset = dataset.name;
    row.algorithm = algorithm;
    row.k = problem.budget();
    row.candidates = spec.candidates;
    row.ac = exact_ac(problem, chosen);
    row.gain = best_single - row.ac;
    row.seconds = spec.record_time ? seconds : 0.0;
    row.seed = spec.seed;
    for (NodeId v : chosen) row.chosen.push_back(g.label(v));
    return row;
  };

  parallel_for(spec.algorithms.size(), [&](std::size_t a) {
    const std::string& algorithm = spec.algorithms[a];
    Cell& cell = cells[a];
    if (algorithm == "greedy") {
      if (g.num_nodes() > spec.greedy_max_nodes) {
        cell.warnings.push_back("greedy skipped: " + std::to_string(g.num_nodes()) + " nodes exceed " +
                                std::to_string(spec.greedy_max_nodes));
        return;
      }
      GreedyOptions options;
      options.prune_t = spec.prune_t;
      options.exact_first = spec.exact_first;
      options.compute_gain = false;
      // greedy selections are nested, so one run at k_max yields every prefix
      const SelectionResult run = greedy(base, options);
      for (std::size_t k = spec.k_min; k <= spec.k_max; ++k) {
        const NodeSet chosen(std::vector<NodeId>(run.chosen.begin(), run.chosen.begin() + static_cast<std::ptrdiff_t>(k)));
        cell.rows.push_back(make_row(algorithm, base.with_budget(k), chosen, run.steps[k - 1].elapsed.count()));
      }
      return;
    }
    for (std::size_t k = spec.k_min; k <= spec.k_max; ++k) {
      const CentralityProblem problem = base.with_budget(k);
      const auto started = Clock::now();
      NodeSet chosen;
      if (is_spectral(algorithm)) {
        const SpectralEmbedding view = embedding->truncated(std::min(k, embedding->dimension()));
        if (algorithm == "spectral_q") chosen = spectral_q(problem, view, spec.seed);
        if (algorithm == "spectral_c") chosen = spectral_c(problem, view, spec.seed);
        if (algorithm == "spectral_d") chosen = spectral_d(problem, view, spec.seed);
      } else if (algorithm == "ppr") {
        chosen = ppr_select(problem);
      } else if (algorithm == "degree") {
        chosen = degree_select(problem);
      } else {
        chosen = distance_select(problem);
      }
      const std::chrono::duration<double> spent = Clock::now() - started;
      cell.rows.push_back(make_row(algorithm, problem, chosen, spent.count()));
    }
  });

  for (auto& cell : cells) {
    out.rows.insert(out.rows.end(), cell.rows.begin(), cell.rows.end());
    out.warnings.insert(out.warnings.end(), cell.warnings.begin(), cell.warnings.end());
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.dataset, a.algorithm, a.k) < std::tie(b.dataset, b.algorithm, b.k);
  });
  return out;
}

std::string emit_csv(std::span<const ResultRow> rows) {
  std::vector<const ResultRow*> sorted;
  for (const auto& row : rows) sorted.push_back(&row);
  std::stable_sort(sorted.begin(), sorted.end(), [](const ResultRow* a, const ResultRow* b) {
    return std::tie(a->dataset, a->algorithm, a->k) < std::tie(b->dataset, b->algorithm, b->k);
  });
  std::string out = "dataset,algorithm,k,candidate_mode,ac,gain,seconds,seed\n";
  for (const ResultRow* row : sorted) {
    out += row->dataset + ',' + row->algorithm + ',' + std::to_string(row->k) + ',' + to_string(row->candidates) +
           ',' + format_real(row->ac) + ',' + format_real(row->gain) + ',' + format_real(row->seconds) + ',' +
           std::to_string(row->seed) + '\n';
  }
  return out;
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "dataset,algorithm,k,candidate_mode,ac,gain,seconds,seed") throw ParseError("bad CSV header", 1);
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 8) throw ParseError("expected 8 fields", lineno);
    try {
      ResultRow row;
      row.dataset = fields[0];
      row.algorithm = fields[1];
      row.k = parse_number<std::size_t>("k", fields[2]);
      row.candidates = parse_candidate_mode(fields[3]);
      row.ac = parse_number<double>("ac", fields[4]);
      row.gain = parse_number<double>("gain", fields[5]);
      row.seconds = parse_number<double>("seconds", fields[6]);
      row.seed = parse_number<std::uint64_t>("seed", fields[7]);
      rows.push_back(std::move(row));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return rows;
}

}  // namespace arw
