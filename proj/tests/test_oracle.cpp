#include <doctest.h>

#include <array>
#include <cstdlib>

#include "arw/errors.hpp"
#include "arw/oracle.hpp"
#include "arw/walk_model.hpp"
#include "support.hpp"

using namespace arw;
using doctest::Approx;

TEST_CASE("simulator examples") {
  auto star = testing::share(star_graph(5));
  const CentralityProblem leaves(star, NodeSet{1, 2, 3, 4, 5}, all_nodes(*star), 0.0, 1);
  const WalkStats one = simulate(leaves, NodeSet{0}, {.samples = 5000, .seed = 3});
  CHECK(one.mean == 1.0);
  CHECK(one.stddev == 0.0);
  CHECK(one.samples == 5000);
  CHECK(one.absorbed_at == std::vector<std::size_t>{5000});

  const WalkStats none = simulate(leaves, NodeSet{1, 2, 3, 4, 5}, {.samples = 100, .seed = 3});
  CHECK(none.mean == 0.0);

  auto path = testing::share(path_graph(3));
  const CentralityProblem p(path, NodeSet{0}, all_nodes(*path), 0.0, 1);
  const WalkStats stats = simulate(p, NodeSet{2}, {.samples = 1'000'000, .seed = 1});
  CHECK(std::abs(stats.mean - exact_ac(p, NodeSet{2})) <= stats.ci_half_width);
  CHECK(stats.ci_half_width == Approx(2.576 * stats.stddev / 1000.0));
}

TEST_CASE("simulator caps runaway walks") {
  auto path = testing::share(path_graph(30));
  const CentralityProblem p(path, NodeSet{0}, all_nodes(*path), 0.0, 1);
  const WalkStats stats = simulate(p, NodeSet{29}, {.samples = 200, .seed = 2, .step_cap = 10});
  CHECK(stats.capped == 200);
  CHECK(stats.samples == 0);
  CHECK_THROWS_AS(simulate(p, NodeSet{29}, {.samples = 0}), ValidationError);
}

TEST_CASE("simulator is deterministic across worker counts") {
  Rng rng(19);
  auto g = testing::share(testing::random_graph(rng, 10, 30));
  const CentralityProblem p(g, testing::random_subset(rng, g->num_nodes(), 4), all_nodes(*g), 0.15, 1);
  const NodeSet c = testing::random_subset(rng, g->num_nodes(), 2);
  setenv("ARW_THREADS", "1", 1);
  const WalkStats serial = simulate(p, c, {.samples = 20'000, .seed = 8});
  setenv("ARW_THREADS", "4", 1);
  const WalkStats wide = simulate(p, c, {.samples = 20'000, .seed = 8});
  unsetenv("ARW_THREADS");
  CHECK(serial.mean == wide.mean);
  CHECK(serial.stddev == wide.stddev);
  CHECK(serial.absorbed_at == wide.absorbed_at);
  CHECK(simulate(p, c, {.samples = 20'000, .seed = 9}).mean != serial.mean);
}

TEST_CASE("simulated means fall inside their confidence intervals") {
  // 50 instances, 20 independent trials each. A 99% interval misses about
  // 10 of 1000 trials; more than 10 + 3 sigma misses means the coverage is
  // really below 99%.
  Rng rng(23);
  std::size_t misses = 0, total = 0;
  for (std::size_t instance = 0; instance < 50; ++instance) {
    const double alpha = std::array{0.0, 0.15, 0.5}[instance % 3];
    auto g = testing::share(testing::random_graph(rng, 3, 25));
    const std::size_t n = g->num_nodes();
    const CentralityProblem p(g, testing::random_subset(rng, n, 1 + rng.below(n)), all_nodes(*g), alpha, 1);
    const NodeSet c = testing::random_subset(rng, n, 1 + rng.below(n / 3 + 1));
    const double exact = exact_ac(p, c);
    for (std::size_t trial = 0; trial < 20; ++trial) {
      const WalkStats stats = simulate(p, c, {.samples = 20'000, .seed = rng.next_u64()});
      misses += std::abs(stats.mean - exact) > stats.ci_half_width;
      ++total;
    }
  }
  const double expected = 0.01 * static_cast<double>(total);
  MESSAGE(misses << " of " << total << " trials outside the interval");
  CHECK(static_cast<double>(misses) <= expected + 3.0 * std::sqrt(expected * 0.99));
}

TEST_CASE("exhaustive search examples") {
  auto path = testing::share(path_graph(3));
  const CentralityProblem p(path, NodeSet{0, 2}, all_nodes(*path), 0.0, 1);
  const OptimalSet best = exhaustive_opt(p);
  CHECK(best.set == NodeSet{1});
  CHECK(best.ac == Approx(1.0));
  CHECK(best.evaluated == 3);

  const OptimalSet all = exhaustive_opt(p.with_budget(3));
  CHECK(all.set == NodeSet{0, 1, 2});
  CHECK(all.ac == 0.0);

  auto big = testing::share(random_connected_graph(40, 80, 1));
  const CentralityProblem wide(big, NodeSet{0}, all_nodes(*big), 0.15, 10);
  CHECK_THROWS_AS(exhaustive_opt(wide), ValidationError);
  CHECK(binomial(40, 10) == 847'660'528ULL);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("exhaustive search agrees with brute force over the reference chain") {
  Rng rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = testing::share(testing::random_graph(rng, 4, 9));
    const std::size_t n = g->num_nodes();
    const CentralityProblem p(g, testing::random_subset(rng, n, 1 + rng.below(n)), all_nodes(*g), 0.15, 2);
    double best = INFINITY;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) best = std::min(best, testing::reference_ac(p, NodeSet{a, b}));
    }
    const OptimalSet opt = exhaustive_opt(p);
    CHECK(opt.ac == Approx(best).epsilon(1e-9));
    CHECK(opt.evaluated == n * (n - 1) / 2);
  }
}
