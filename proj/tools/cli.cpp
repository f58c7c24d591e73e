#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "arw/errors.hpp"
#include "arw/experiment.hpp"
#include "arw/greedy.hpp"
#include "arw/oracle.hpp"
#include "arw/walk_model.hpp"

namespace arw {

namespace {

struct CommonArgs {
  std::string dataset;
  double alpha = 0.15;
  std::uint64_t seed = 1;
  std::string output;
  std::string query;
  std::size_t seeds = 2;
  Hops radius = 2;
  std::size_t queries = 10;
  std::string candidates = "all";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_queries) {
  cmd->add_option("--dataset", args.dataset, "edge-list path, 'karate', 'barbell:C:B' or 'random:N:M:SEED'");
  cmd->add_option("--alpha", args.alpha,
                  "restart probability (default 0.15); PageRank uses it as the teleport probability");
  cmd->add_option("--seed", args.seed, "RNG seed (default 1)");
  cmd->add_option("--output", args.output, "write results here instead of stdout");
  if (with_queries) {
    cmd->add_option("--query", args.query, "comma-separated query labels; otherwise generated from seed balls");
    cmd->add_option("--seeds", args.seeds, "seed nodes for query generation (default 2)");
    cmd->add_option("--radius", args.radius, "ball radius for query generation (default 2)");
    cmd->add_option("--queries", args.queries, "number of query nodes to generate (default 10)");
    cmd->add_option("--candidates", args.candidates, "candidate set: all or query (default all)")
        ->check(CLI::IsMember({"all", "query"}));
  }
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> labels;
  std::string label;
  std::istringstream in(text);
  while (std::getline(in, label, ',')) {
    if (!label.empty()) labels.push_back(label);
  }
  return labels;
}

NodeSet resolve_labels(const Graph& g, const std::string& text) {
  std::vector<NodeId> ids;
  for (const auto& label : split_labels(text)) ids.push_back(g.id_of(label));
  return NodeSet(std::move(ids));
}

std::string join_labels(const Graph& g, const NodeSet& set) {
  std::string out;
  for (NodeId v : set) out += (out.empty() ? "" : ",") + g.label(v);
  return out;
}

struct Loaded {
  Dataset dataset;
  NodeSet queries;
  NodeSet candidates;
};

Loaded load(const CommonArgs& args, std::ostream& err) {
  if (args.dataset.empty()) throw ValidationError("--dataset is required");
  Loaded loaded{load_dataset(args.dataset), {}, {}};
  for (const auto& warning : loaded.dataset.warnings) err << "warning: " << warning << '\n';
  const Graph& g = *loaded.dataset.graph;
  loaded.queries = args.query.empty() ? generate_queries(g, args.seeds, args.radius, args.queries, args.seed)
                                      : resolve_labels(g, args.query);
  loaded.candidates = parse_candidate_mode(args.candidates) == CandidateMode::all ? all_nodes(g) : loaded.queries;
  return loaded;
}

void write(const CommonArgs& args, const std::string& text, std::ostream& out) {
  if (args.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(args.output);
  if (!file) throw ValidationError("cannot write '" + args.output + "'");
  file << text;
}

std::string real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k absorbing random-walk centrality"};
  app.require_subcommand(1);

  CommonArgs run_args;
  std::string spec_path, k_range, epsilon_text, prune_text, max_nodes_text;
  std::vector<std::string> algos;
  bool exact_first = false, record_time = false;
  auto* run = app.add_subcommand("run", "run the algorithm comparison and emit CSV");
  add_common(run, run_args, true);
  run->add_option("--spec", spec_path, "key=value spec file; flags override its values");
  run->add_option("--k", k_range, "budget K or range A..B (default 1..5)");
  run->add_option("--algo", algos, "algorithm to run (repeatable): greedy, spectral_q, spectral_c, spectral_d, "
                                   "ppr, degree, distance. Spectral embeddings use dimension k");
  run->add_option("--epsilon", epsilon_text, "approximate-evaluation threshold (default 1e-6)");
  run->add_option("--prune-t", prune_text, "greedy first pick scans the top-t PageRank candidates (default 20)");
  run->add_flag("--exact-first", exact_first, "greedy first pick scans every candidate");
  run->add_option("--greedy-max-nodes", max_nodes_text, "skip greedy above this node count (default 20000)");
  run->add_flag("--record-time", record_time, "write wall-clock seconds (otherwise 0, keeping output reproducible)");

  CommonArgs eval_args;
  std::string absorbing;
  double epsilon = 1e-6;
  auto* eval = app.add_subcommand("eval", "exact and approximate ac for an absorbing set");
  add_common(eval, eval_args, true);
  eval->add_option("--absorbing", absorbing, "comma-separated absorbing labels")->required();
  eval->add_option("--epsilon", epsilon, "approximate-evaluation threshold (default 1e-6)");

  CommonArgs sim_args;
  std::string sim_absorbing;
  std::size_t samples = 100'000;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of ac for an absorbing set");
  add_common(sim, sim_args, true);
  sim->add_option("--absorbing", sim_absorbing, "comma-separated absorbing labels")->required();
  sim->add_option("--samples", samples, "walks to simulate (default 100000)");

  CommonArgs opt_args;
  std::size_t opt_k = 1;
  std::uint64_t budget = 1'000'000;
  auto* opt = app.add_subcommand("opt", "exhaustive optimum over all k-subsets of the candidates");
  add_common(opt, opt_args, true);
  opt->add_option("--k", opt_k, "budget k (default 1)");
  opt->add_option("--budget", budget, "maximum number of subsets to enumerate (default 1000000)");

  CommonArgs query_args;
  auto* queries = app.add_subcommand("queries", "emit a generated query set, one label per line");
  add_common(queries, query_args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      ExperimentSpec spec = spec_path.empty() ? ExperimentSpec{} : parse_spec_file(spec_path);
      auto given = [&](const char* flag) { return run->count(flag) > 0; };
      if (given("--dataset")) spec.dataset = run_args.dataset;
      if (given("--alpha")) spec.alpha = run_args.alpha;
      if (given("--seed")) spec.seed = run_args.seed;
      if (given("--seeds")) spec.seeds = run_args.seeds;
      if (given("--radius")) spec.radius = run_args.radius;
      if (given("--queries")) spec.queries = run_args.queries;
      if (given("--candidates")) spec.set("candidates", run_args.candidates);
      if (given("--k")) spec.set("k", k_range);
      if (given("--algo")) spec.algorithms = algos;
      if (given("--epsilon")) spec.set("epsilon", epsilon_text);
      if (given("--prune-t")) spec.set("prune_t", prune_text);
      if (given("--exact-first")) spec.exact_first = exact_first;
      if (given("--greedy-max-nodes")) spec.set("greedy_max_nodes", max_nodes_text);
      if (given("--record-time")) spec.record_time = record_time;
      if (given("--query")) throw ValidationError("run generates its own query set; --query is not supported");
      const ExperimentOutput result = run_experiment(spec);
      for (const auto& warning : result.warnings) err << "warning: " << warning << '\n';
      write(run_args, emit_csv(result.rows), out);
    } else if (*eval) {
      const Loaded in = load(eval_args, err);
      const Graph& g = *in.dataset.graph;
      const CentralityProblem problem(in.dataset.graph, in.queries, in.candidates, eval_args.alpha, 1);
      const NodeSet set = resolve_labels(g, absorbing);
      const double exact = exact_ac(problem, set);
      const ApproximateAc approx = approximate_ac(build_transition(problem, set), problem.start(), epsilon);
      std::ostringstream text;
      text << "queries=" << join_labels(g, in.queries) << '\n'
           << "absorbing=" << join_labels(g, set) << '\n'
           << "exact_ac=" << real(exact) << '\n'
           << "approximate_ac=" << real(approx.value) << '\n'
           << "last_increment=" << real(approx.last_increment) << '\n'
           << "iterations=" << approx.iterations << '\n';
      write(eval_args, text.str(), out);
    } else if (*sim) {
      const Loaded in = load(sim_args, err);
      const Graph& g = *in.dataset.graph;
      const CentralityProblem problem(in.dataset.graph, in.queries, in.candidates, sim_args.alpha, 1);
      const NodeSet set = resolve_labels(g, sim_absorbing);
      const WalkStats stats = simulate(problem, set, {samples, sim_args.seed});
      if (stats.capped > 0) err << "warning: " << stats.capped << " samples hit the step cap and were excluded\n";
      std::ostringstream text;
      text << "queries=" << join_labels(g, in.queries) << '\n'
           << "absorbing=" << join_labels(g, set) << '\n'
           << "samples=" << stats.samples << '\n'
           << "mean=" << real(stats.mean) << '\n'
           << "stddev=" << real(stats.stddev) << '\n'
           << "ci99_half_width=" << real(stats.ci_half_width) << '\n'
           << "capped=" << stats.capped << '\n';
      write(sim_args, text.str(), out);
    } else if (*opt) {
      const Loaded in = load(opt_args, err);
      const Graph& g = *in.dataset.graph;
      const CentralityProblem problem(in.dataset.graph, in.queries, in.candidates, opt_args.alpha, opt_k);
      const OptimalSet best = exhaustive_opt(problem, budget);
      std::ostringstream text;
      text << "queries=" << join_labels(g, in.queries) << '\n'
           << "optimal=" << join_labels(g, best.set) << '\n'
           << "ac=" << real(best.ac) << '\n'
           << "evaluated=" << best.evaluated << '\n';
      write(opt_args, text.str(), out);
    } else if (*queries) {
      const Loaded in = load(query_args, err);
      std::string text;
      for (NodeId v : in.queries) text += in.dataset.graph->label(v) + '\n';
      write(query_args, text, out);
    }
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace arw
