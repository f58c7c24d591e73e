#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arw/graph.hpp"

namespace arw {

enum class CandidateMode { all, query };

std::string to_string(CandidateMode mode);
CandidateMode parse_candidate_mode(const std::string& text);

/// Algorithm names accepted by run_experiment, in canonical order.
const std::vector<std::string>& algorithm_names();

/// One experiment: dataset, query protocol, candidate mode, k range and the
/// algorithms to compare.
struct ExperimentSpec {
  std::string dataset;
  std::size_t seeds = 2;    ///< seed nodes for the query balls
  Hops radius = 2;
  std::size_t queries = 10;  ///< |Q|
  double alpha = 0.15;
  CandidateMode candidates = CandidateMode::all;
  std::size_t k_min = 1;
  std::size_t k_max = 5;
  std::vector<std::string> algorithms = algorithm_names();
  std::uint64_t seed = 1;
  double epsilon = 1e-6;
  std::optional<std::size_t> prune_t;
  bool exact_first = false;
  std::size_t greedy_max_nodes = 20'000;
  /// Wall-clock seconds go into the CSV only when set; otherwise the column
  /// is 0 so identical specs give identical bytes.
  bool record_time = false;

  void validate() const;
  /// Applies one key=value setting; throws ValidationError on unknown keys.
  void set(const std::string& key, const std::string& value);
};

/// Reads a key=value spec file. '#' starts a comment line; blank lines are
/// ignored. Keys: dataset, seeds, radius, queries, alpha, candidates
/// (all|query), k (K or A..B), algorithms (comma list), seed, epsilon,
/// prune_t, exact_first, greedy_max_nodes, record_time.
ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec parse_spec_file(const std::string& path);

struct Dataset {
  std::string name;
  std::shared_ptr<const Graph> graph;
  std::vector<std::string> warnings;
};

/// Resolves a dataset reference: "karate" (bundled), "barbell:CLIQUE:BRIDGE",
/// "random:N:M:SEED", or a path to an edge-list file. Disconnected graphs are
/// reduced to their largest component with a warning.
Dataset load_dataset(const std::string& reference);

/// The bundled karate club edge list.
std::string_view karate_edge_list();

/// Query protocol: `seeds` distinct uniform seed nodes, the union of their
/// radius balls, then `size` uniform nodes of the union. Redraws seeds up to
/// 100 times while the union is smaller than `size`.
NodeSet generate_queries(const Graph& g, std::size_t seeds, Hops radius, std::size_t size, std::uint64_t seed);

struct ResultRow {
  std::string dataset;
  std::string algorithm;
  std::size_t k = 0;
  CandidateMode candidates = CandidateMode::all;
  double ac = 0.0;
  double gain = 0.0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> chosen;  ///< labels; not serialized
};

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  NodeSet queries;
  std::vector<std::string> warnings;
};

/// Runs every algorithm for every k and scores each selection with exact_ac.
ExperimentOutput run_experiment(const ExperimentSpec& spec);
ExperimentOutput run_experiment(const ExperimentSpec& spec, const Dataset& dataset);

/// Header `dataset,algorithm,k,candidate_mode,ac,gain,seconds,seed`, reals at
/// 9 significant digits, rows sorted by (dataset, algorithm, k).
std::string emit_csv(std::span<const ResultRow> rows);
std::vector<ResultRow> parse_csv(std::istream& in);

}  // namespace arw
