#include <fstream>
#include <sstream>

#include "cycdisc/builder.hpp"
#include "cycdisc/harness.hpp"
#include "cycdisc/mec.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cycdisc;

namespace {

DirectedGraph eight_vertex() {
  std::ifstream in(std::string(CYCDISC_DATA_DIR) + "/eight_vertex.graph");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::vector<Edge> sym(std::vector<Edge> v) {
  const std::size_t k = v.size();
  for (std::size_t i = 0; i < k; ++i) v.emplace_back(v[i].second, v[i].first);
  std::sort(v.begin(), v.end());
  return v;
}

SearchResult trivial_search(const OrderedPartition& p) {
  SearchResult r;
  r.best = p;
  r.plateau = {p};
  return r;
}

}  // namespace

TEST_CASE("the eight-vertex decomposition yields the expected instances") {
  const DirectedGraph g = eight_vertex();
  const OrderedPartition p = induced_partition(g);
  const auto instances = derive_instances(enumerate_ci(g), p);
  REQUIRE(instances.size() == 4);
  const auto order = linear_extension(p);
  REQUIRE(order.size() == 4);

  const SccrInstance& big = instances.back();
  CHECK(big.c == make_set({1, 2, 3, 4}));
  CHECK(big.a_c == sym({{1, 2}, {2, 3}, {3, 4}, {1, 4}, {2, 4}}));
  CHECK(big.b_c == std::vector<Edge>{{5, 1}, {5, 2}, {5, 4}, {6, 1}, {6, 2}, {6, 4}, {7, 1}, {7, 2}, {8, 1}, {8, 2}});
  CHECK(big.com_ch == sym({{7, 8}}));
  CHECK(big.no_com_ch == sym({{5, 7}, {5, 8}, {6, 7}, {6, 8}}));

  for (std::size_t k = 0; k + 1 < instances.size(); ++k) {
    const auto& inst = instances[k];
    CHECK(inst.b_c.empty());
    CHECK(inst.com_ch.empty());
    CHECK(inst.no_com_ch.empty());
    if (inst.c == make_set({5, 6})) {
      CHECK(inst.a_c == sym({{5, 6}}));
    } else {
      CHECK(inst.a_c.empty());
    }
  }
}

TEST_CASE("linear extensions prefer the smallest available block") {
  const OrderedPartition p(4, {bit(1), bit(2), bit(3), bit(4)}, {{2, 0}, {3, 1}});
  CHECK(linear_extension(p) == std::vector<int>{2, 0, 3, 1});
  const OrderedPartition free(3, {bit(1), bit(2), bit(3)});
  CHECK(linear_extension(free) == std::vector<int>{0, 1, 2});
}

TEST_CASE("feasibility rejects incomparable dependent pairs and empty covers") {
  const CiOracle ci = enumerate_ci(DirectedGraph(3, {{1, 2}, {2, 3}}));
  const OrderedPartition singles(3, {bit(1), bit(2), bit(3)});
  CHECK_FALSE(check_partition_feasible(ci, singles));
  REQUIRE(partition_infeasibility(ci, singles).has_value());
  CHECK(partition_infeasibility(ci, singles)->find("incomparable") != std::string::npos);

  const OrderedPartition chain(3, {bit(1), bit(2), bit(3)}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(check_partition_feasible(ci, chain));

  // Blocks {1} < {3} with no dependent pair across them.
  const CiOracle two = enumerate_ci(DirectedGraph(3, {{1, 2}}));
  const OrderedPartition gap(3, {make_set({1, 2}), bit(3)}, {{0, 1}});
  CHECK_FALSE(check_partition_feasible(two, gap));
}

TEST_CASE("true decompositions of random graphs are feasible") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const int n = 3 + static_cast<int>(s % 4);
    const DirectedGraph g = gen_er_graph(n, 0.3, 40 + s);
    const CiOracle ci = enumerate_ci(g);
    CHECK(check_partition_feasible(ci, induced_partition(g)));
    for (const auto& inst : derive_instances(ci, induced_partition(g))) CHECK(check_instance(inst).empty());
  }
}

TEST_CASE("the pipeline rebuilds a graph equivalent to the eight-vertex graph") {
  const DirectedGraph g = eight_vertex();
  const CiOracle ci = enumerate_ci(g);
  BuildLimits limits;
  limits.seed = 3;
  const auto res = build_graph(ci, trivial_search(induced_partition(g)), SolverKind::construct_correct, limits);
  REQUIRE(res.graph.has_value());
  CHECK(ci_equivalent(*res.graph, g));
  CHECK(res.partitions_tried == 1);
}

TEST_CASE("an all-independent CI set gives the edgeless graph") {
  const CiOracle ci = enumerate_ci(DirectedGraph(4));
  const OrderedPartition singles(4, {bit(1), bit(2), bit(3), bit(4)});
  for (SolverKind k : {SolverKind::construct_correct, SolverKind::flow}) {
    const auto res = build_graph(ci, trivial_search(singles), k, {});
    REQUIRE(res.graph.has_value());
    CHECK(res.graph->edge_count() == 0);
  }
}

TEST_CASE("both solvers rebuild small random graphs from their true partitions") {
  int built = 0;
  for (std::uint64_t s = 0; s < 25; ++s) {
    const DirectedGraph g = gen_er_graph(5, 0.3, 600 + s);
    const CiOracle ci = enumerate_ci(g);
    for (SolverKind k : {SolverKind::construct_correct, SolverKind::flow}) {
      BuildLimits limits;
      limits.seed = s;
      const auto res = build_graph(ci, trivial_search(induced_partition(g)), k, limits);
      if (res.graph) {
        ++built;
        CHECK(ci_equivalent(*res.graph, g));
      } else {
        CHECK(res.failures.size() + res.partitions_screened > 0);
        for (const auto& f : res.failures) CHECK_FALSE(f.reason.empty());
      }
    }
  }
  CHECK(built >= 40);
}

TEST_CASE("infeasible partitions are screened rather than tried") {
  const CiOracle ci = enumerate_ci(DirectedGraph(3, {{1, 2}, {2, 3}}));
  const OrderedPartition singles(3, {bit(1), bit(2), bit(3)});
  SearchResult r = trivial_search(singles);
  r.best_score = score_vector(ci, singles);
  BuildLimits limits;
  limits.max_explored = 0;
  const auto res = build_graph(ci, r, SolverKind::construct_correct, limits);
  CHECK_FALSE(res.graph.has_value());
  CHECK(res.partitions_tried == 0);
  CHECK(res.partitions_screened == 1);
  CHECK(res.screening_reasons.at("dependent") == 1);
  CHECK(res.failures.empty());
}

TEST_CASE("a block its dependent pairs do not connect is infeasible") {
  const CiOracle ci = enumerate_ci(DirectedGraph(3, {{1, 2}, {2, 1}}));
  const OrderedPartition merged(3, {full_set(3)});
  REQUIRE(partition_infeasibility(ci, merged).has_value());
  CHECK(partition_infeasibility(ci, merged)->find("not connected") != std::string::npos);
  CHECK(check_partition_feasible(ci, OrderedPartition(3, {make_set({1, 2}), bit(3)})));
}

TEST_CASE("screening lets the pipeline reach partitions beyond the search log") {
  const DirectedGraph g = eight_vertex();
  const CiOracle ci = enumerate_ci(g);
  SearchConfig cfg;
  cfg.seed = 7;
  const auto search = greedy_discover(ci, cfg);
  BuildLimits limits;
  limits.seed = 7;
  const auto res = build_graph(ci, search, SolverKind::construct_correct, limits);
  REQUIRE(res.graph.has_value());
  CHECK(ci_equivalent(*res.graph, g));
  CHECK(res.partitions_tried <= limits.max_partitions);
}

TEST_CASE("every graph on up to four vertices is rebuilt or the failure is explained") {
  int rebuilt = 0;
  int total = 0;
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t code = 0; code < (1ULL << (n * (n - 1))); ++code) {
      const DirectedGraph g = oracle::graph_from_code(n, code);
      const CiOracle ci = enumerate_ci(g);
      SearchConfig cfg;
      cfg.seed = code;
      BuildLimits limits;
      limits.seed = code;
      const auto res = build_graph(ci, greedy_discover(ci, cfg), SolverKind::construct_correct, limits);
      ++total;
      if (res.graph) {
        ++rebuilt;
        CHECK(markov_equivalent(*res.graph, g));
      } else {
        CHECK(res.failures.size() + res.partitions_screened > 0);
      }
    }
  }
  MESSAGE("rebuilt " << rebuilt << " of " << total);
  CHECK(rebuilt > 0);
}
