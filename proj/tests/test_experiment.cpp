#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "arw/errors.hpp"
#include "arw/experiment.hpp"
#include "arw/walk_model.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace arw;
using doctest::Approx;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "arw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("arw_test_" + name);
}

ExperimentSpec karate_spec() {
  ExperimentSpec spec;
  spec.dataset = "karate";
  return spec;
}

}  // namespace

TEST_CASE("query generation") {
  const Dataset karate = load_dataset("karate");
  const Graph& g = *karate.graph;

  std::ifstream golden(std::string(ARW_TEST_DATA) + "/karate_queries_seed1.txt");
  REQUIRE(golden);
  std::vector<NodeId> expected;
  for (std::string label; golden >> label;) expected.push_back(g.id_of(label));
  const NodeSet q = generate_queries(g, 2, 2, 10, 1);
  CHECK(q == NodeSet(expected));
  CHECK(generate_queries(g, 2, 2, 10, 1) == q);

  // The golden set lies inside the union of two radius-2 balls.
  bool covered = false;
  for (NodeId a = 0; a < g.num_nodes() && !covered; ++a) {
    for (NodeId b = a + 1; b < g.num_nodes() && !covered; ++b) {
      std::vector<NodeId> merged = ball(g, a, 2).ids();
      for (NodeId v : ball(g, b, 2)) merged.push_back(v);
      covered = q.is_subset_of(NodeSet(merged));
    }
  }
  CHECK(covered);

  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const NodeSet one = generate_queries(path_graph(5), 1, 0, 1, v);
    CHECK(one.size() == 1);
  }
  const Graph path = path_graph(4);
  CHECK(generate_queries(path, 1, 3, 4, 5) == NodeSet{0, 1, 2, 3});
  CHECK_THROWS_AS(generate_queries(path, 1, 0, 2, 5), ValidationError);
}

TEST_CASE("spec parsing") {
  std::istringstream in(
      "# karate sweep\n"
      "dataset = karate\n"
      "k = 2..4\n"
      "algorithms = degree,ppr\n"
      "candidates = query\n"
      "alpha = 0.3\n"
      "prune_t = 7\n"
      "exact_first = true\n");
  const ExperimentSpec spec = parse_spec(in);
  CHECK(spec.dataset == "karate");
  CHECK(spec.k_min == 2);
  CHECK(spec.k_max == 4);
  CHECK(spec.algorithms == std::vector<std::string>{"degree", "ppr"});
  CHECK(spec.candidates == CandidateMode::query);
  CHECK(spec.alpha == 0.3);
  CHECK(spec.prune_t == 7);
  CHECK(spec.exact_first);
  CHECK_NOTHROW(spec.validate());

  std::istringstream bad_key("dataset=karate\nflavour=mint\n");
  try {
    parse_spec(bad_key);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream no_equals("dataset karate\n");
  CHECK_THROWS_AS(parse_spec(no_equals), ParseError);

  ExperimentSpec s = karate_spec();
  s.queries = 1;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = karate_spec();
  s.radius = 0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = karate_spec();
  s.candidates = CandidateMode::query;
  s.k_max = 11;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = karate_spec();
  s.algorithms = {"oracle"};
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("datasets") {
  const Dataset barbell = load_dataset("barbell:4:3");
  CHECK(barbell.graph->num_nodes() == 11);
  CHECK(barbell.graph->num_edges() == 2 * 6 + 4);
  CHECK(load_dataset("random:30:50:2").graph->num_edges() == 50);

  const auto path = scratch("split.edges");
  {
    std::ofstream f(path);
    f << "a b\nb c\nc a\nx y\nb a\n";
  }
  const Dataset split = load_dataset(path.string());
  CHECK(split.name == "arw_test_split");
  CHECK(split.graph->num_nodes() == 3);
  CHECK(split.warnings.size() == 2);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_dataset("/nonexistent/graph.edges"), ValidationError);
}

TEST_CASE("experiment rows") {
  ExperimentSpec spec = karate_spec();
  spec.algorithms = {"degree"};
  spec.k_max = 3;
  const auto degree = run_experiment(spec).rows;
  REQUIRE(degree.size() == 3);
  CHECK(degree[1].ac <= degree[0].ac);
  CHECK(degree[2].ac <= degree[1].ac);

  const ExperimentOutput full = run_experiment(karate_spec());
  CHECK(full.rows.size() == 35);
  const std::string csv = emit_csv(full.rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 36);
  const Dataset karate = load_dataset("karate");
  for (const auto& row : full.rows) {
    CHECK(row.ac >= 0.0);
    NodeSet chosen;
    for (const auto& label : row.chosen) chosen = chosen.with(karate.graph->id_of(label));
    CHECK(chosen.size() == row.k);
    const CentralityProblem p(karate.graph, full.queries, all_nodes(*karate.graph), 0.15, row.k);
    CHECK(row.ac == exact_ac(p, chosen));
  }
  for (std::size_t i = 1; i < full.rows.size(); ++i) {
    const auto& a = full.rows[i - 1];
    const auto& b = full.rows[i];
    CHECK(std::tie(a.dataset, a.algorithm, a.k) < std::tie(b.dataset, b.algorithm, b.k));
    if (a.algorithm == "greedy" && b.algorithm == "greedy") CHECK(b.ac <= a.ac);
  }
  for (const auto& g : full.rows) {
    if (g.algorithm != "greedy") continue;
    for (const auto& other : full.rows) {
      if (other.k == g.k) CHECK(g.ac <= other.ac + 1e-12);
    }
  }

  spec = karate_spec();
  spec.greedy_max_nodes = 10;
  const ExperimentOutput skipped = run_experiment(spec);
  CHECK(skipped.rows.size() == 30);
  CHECK_FALSE(skipped.warnings.empty());
}

TEST_CASE("csv round trip") {
  CHECK(emit_csv({}) == "dataset,algorithm,k,candidate_mode,ac,gain,seconds,seed\n");
  ResultRow row{"karate", "ppr", 3, CandidateMode::query, 2.718281828459045, -0.1234567891234, 0.0, 42, {}};
  std::istringstream in(emit_csv(std::vector{row}));
  const auto back = parse_csv(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0].dataset == "karate");
  CHECK(back[0].algorithm == "ppr");
  CHECK(back[0].k == 3);
  CHECK(back[0].candidates == CandidateMode::query);
  CHECK(back[0].ac == Approx(row.ac).epsilon(1e-8));
  CHECK(back[0].gain == Approx(row.gain).epsilon(1e-8));
  CHECK(back[0].seed == 42);
  std::istringstream again(emit_csv(back));
  CHECK(emit_csv(parse_csv(again)) == emit_csv(back));
}

TEST_CASE("identical specs give identical bytes") {
  ExperimentSpec spec = karate_spec();
  spec.candidates = CandidateMode::query;
  setenv("ARW_THREADS", "1", 1);
  const std::string serial = emit_csv(run_experiment(spec).rows);
  setenv("ARW_THREADS", "3", 1);
  const std::string wide = emit_csv(run_experiment(spec).rows);
  unsetenv("ARW_THREADS");
  CHECK(serial == wide);
}

TEST_CASE("cli subcommands") {
  const CliRun queries = cli({"queries", "--dataset", "karate"});
  CHECK(queries.code == 0);
  CHECK(queries.out == "0\n1\n5\n7\n8\n11\n13\n17\n19\n31\n");

  const CliRun eval = cli({"eval", "--dataset", "karate", "--query", "0,5", "--absorbing", "33"});
  CHECK(eval.code == 0);
  CHECK(eval.out.find("exact_ac=") != std::string::npos);
  CHECK(eval.out.find("approximate_ac=") != std::string::npos);

  const CliRun sim = cli({"simulate", "--dataset", "karate", "--query", "0", "--absorbing", "0", "--samples", "10"});
  CHECK(sim.code == 0);
  CHECK(sim.out.find("mean=0\n") != std::string::npos);

  const CliRun opt = cli({"opt", "--dataset", "barbell:3:1", "--query", "0,6", "--k", "2", "--alpha", "0"});
  CHECK(opt.code == 0);
  CHECK(opt.out.find("optimal=0,6\n") != std::string::npos);
  CHECK(opt.out.find("ac=0\n") != std::string::npos);

  const auto spec_path = scratch("spec.txt");
  const auto csv_path = scratch("out.csv");
  {
    std::ofstream f(spec_path);
    f << "dataset=karate\nk=1..2\nalgorithms=degree,distance\n";
  }
  const CliRun run = cli({"run", "--spec", spec_path.string(), "--algo", "ppr", "--output", csv_path.string()});
  CHECK(run.code == 0);
  std::ifstream csv(csv_path);
  const auto rows = parse_csv(csv);
  CHECK(rows.size() == 2);
  CHECK(rows[0].algorithm == "ppr");
  std::filesystem::remove(spec_path);
  std::filesystem::remove(csv_path);
}

TEST_CASE("cli exit codes") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"run", "--help"}).out.find("teleport") != std::string::npos);
  CHECK(cli({"run", "--help"}).out.find("dimension k") != std::string::npos);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"eval", "--dataset", "karate", "--query", "0", "--absorbing", "nosuch"}).code == 1);
  CHECK(cli({"run", "--dataset", "karate", "--algo", "oracle"}).code == 1);
  CHECK(cli({"run", "--dataset", "karate", "--candidates", "some"}).code == 1);
  CHECK(cli({"opt", "--dataset", "karate", "--k", "9", "--budget", "10"}).code == 1);
}
