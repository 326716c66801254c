#include <fstream>
#include <sstream>
#include <unordered_set>

#include "cycdisc/errors.hpp"
#include "cycdisc/harness.hpp"
#include "cycdisc/poset.hpp"
#include "cycdisc/search.hpp"
#include "doctest.h"

using namespace cycdisc;

namespace {

DirectedGraph eight_vertex() {
  std::ifstream in(std::string(CYCDISC_DATA_DIR) + "/eight_vertex.graph");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

}  // namespace

TEST_CASE("the default starts are one block, a halved chain and unordered singletons") {
  const auto starts = default_initial_partitions(7);
  REQUIRE(starts.size() == 3);
  CHECK(starts[0].block_count() == 1);
  REQUIRE(starts[1].block_count() == 2);
  CHECK(starts[1].block(0) == make_set({1, 2, 3}));
  CHECK(starts[1].less(0, 1));
  CHECK(starts[2].block_count() == 7);
  CHECK(starts[2].order_size() == 0);
}

TEST_CASE("greedy search recovers the eight-vertex graph's features") {
  const DirectedGraph g = eight_vertex();
  const CiOracle ci = enumerate_ci(g);
  SearchConfig cfg;
  cfg.seed = 11;
  const SearchResult res = greedy_discover(ci, cfg);
  CHECK(compute_sets(ci, res.best) == graph_summary(g));
  CHECK(res.best_score == score_vector(ci, induced_partition(g)));
  REQUIRE_FALSE(res.plateau.empty());
  CHECK(res.plateau.front() == res.best);
  for (const auto& p : res.plateau) CHECK(score_vector(ci, p) == res.best_score);
}

TEST_CASE("search results repeat under a fixed seed") {
  const DirectedGraph g = gen_er_graph(6, 0.3, 4);
  const CiOracle ci = enumerate_ci(g);
  SearchConfig cfg;
  cfg.seed = 99;
  const auto a = greedy_discover(ci, cfg);
  const auto b = greedy_discover(ci, cfg);
  CHECK(a.best == b.best);
  CHECK(a.plateau == b.plateau);
  CHECK(a.restart_scores == b.restart_scores);
}

TEST_CASE("unbounded search on small inputs reaches a global minimiser") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const DirectedGraph g = gen_er_graph(4, 0.35, 200 + s);
    const CiOracle ci = enumerate_ci(g);
    SearchConfig cfg;
    cfg.unbounded = true;
    cfg.seed = s;
    const auto res = greedy_discover(ci, cfg);
    ScoreVector best = res.best_score;
    for (const auto& p : enumerate_all(4)) best = std::min(best, score_vector(ci, p));
    CHECK(res.best_score == best);
  }
}

TEST_CASE("unbounded search refuses larger inputs") {
  const CiOracle ci = enumerate_ci(DirectedGraph(6));
  SearchConfig cfg;
  cfg.unbounded = true;
  CHECK_THROWS_AS(greedy_discover(ci, cfg), GuardError);
}

TEST_CASE("a single descent step returns a strictly better neighbour") {
  // The single block pairs 1 with 2; the collider does not.
  const DirectedGraph g(3, {{1, 3}, {2, 3}});
  const CiOracle ci = enumerate_ci(g);
  const OrderedPartition start(3, {full_set(3)});
  const auto better = dfs_improve(ci, start);
  REQUIRE(better.has_value());
  CHECK(score_vector(ci, *better) < score_vector(ci, start));
}

TEST_CASE("a chain ties with the single block, so no step improves it") {
  const CiOracle ci = enumerate_ci(DirectedGraph(3, {{1, 2}, {2, 3}}));
  const OrderedPartition start(3, {full_set(3)});
  CHECK(score_vector(ci, start) == score_vector(ci, induced_partition(DirectedGraph(3, {{1, 2}, {2, 3}}))));
  CHECK_FALSE(dfs_improve(ci, start).has_value());
}

TEST_CASE("more equal-score partitions are fresh and tie with the best") {
  const DirectedGraph g = gen_er_graph(5, 0.2, 8);
  const CiOracle ci = enumerate_ci(g);
  SearchConfig cfg;
  cfg.seed = 5;
  const auto res = greedy_discover(ci, cfg);
  const auto more = more_plateau(ci, res, 50, 1);
  std::unordered_set<OrderedPartition, PartitionHash> known(res.plateau.begin(), res.plateau.end());
  for (const auto& p : more) {
    CHECK(known.insert(p).second);
    CHECK(score_vector(ci, p) == res.best_score);
  }
}
