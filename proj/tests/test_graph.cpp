#include <fstream>
#include <sstream>

#include "cycdisc/errors.hpp"
#include "cycdisc/graph.hpp"
#include "cycdisc/harness.hpp"
#include "cycdisc/partition.hpp"
#include "cycdisc/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cycdisc;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CYCDISC_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("vertex sets print and collect members") {
  CHECK(format_set(0) == "{}");
  CHECK(format_set(make_set({5, 1, 2})) == "{1,2,5}");
  CHECK(members(make_set({3, 7})) == std::vector<Vertex>{3, 7});
  CHECK(full_set(3) == make_set({1, 2, 3}));
}

TEST_CASE("edges are added, queried and removed") {
  DirectedGraph g(3);
  g.add_edge(1, 2);
  g.add_edge(2, 1);
  g.add_edge(2, 3);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK(g.edge_count() == 3);
  CHECK(g.parents(3) == bit(2));
  g.remove_edge(2, 1);
  CHECK_FALSE(g.has_edge(2, 1));
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(1, 4), std::invalid_argument);
}

TEST_CASE("graph documents round-trip") {
  const DirectedGraph g = parse_graph(slurp("eight_vertex.graph"));
  CHECK(g.n() == 8);
  CHECK(g.edge_count() == 11);
  CHECK(parse_graph(format_graph(g)) == g);
  CHECK_THROWS_AS(parse_graph("n=3\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("n=3\n1 x\n"), ParseError);
  CHECK(parse_graph("# comment\nn=2\n\n1 2  # trailing\n").has_edge(1, 2));
}

TEST_CASE("reachability and components agree with the Floyd-Warshall oracle") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int n = 2 + static_cast<int>(s % 6);
    const DirectedGraph g = gen_er_graph(n, 0.1 + 0.05 * static_cast<double>(s % 8), s);
    const auto reach = reachability(g);
    const auto ref = oracle::closure(g);
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = 1; v <= n; ++v) CHECK(contains(reach[u], v) == ref[u][v]);
    }
    CHECK(scc(g) == oracle::components(g));
  }
}

TEST_CASE("ancestors and descendants are reflexive") {
  const DirectedGraph g(3, {{1, 2}, {2, 3}});
  CHECK(ancestors(g, bit(3)) == make_set({1, 2, 3}));
  CHECK(descendants(g, bit(2)) == make_set({2, 3}));
  CHECK(ancestors(g, bit(1)) == bit(1));
}

TEST_CASE("the eight-vertex graph induces four blocks with three order pairs") {
  const DirectedGraph g = parse_graph(slurp("eight_vertex.graph"));
  const OrderedPartition p = induced_partition(g);
  REQUIRE(p.block_count() == 4);
  CHECK(p.block(0) == make_set({1, 2, 3, 4}));
  CHECK(p.block(1) == make_set({5, 6}));
  const int big = p.block_of(1);
  CHECK(p.less(p.block_of(5), big));
  CHECK(p.less(p.block_of(7), big));
  CHECK(p.less(p.block_of(8), big));
  CHECK(p.order_size() == 3);
  CHECK_FALSE(p.less(p.block_of(7), p.block_of(8)));
}

TEST_CASE("partition documents round-trip and reject bad covers") {
  const OrderedPartition p(4, {make_set({1, 4}), bit(2), bit(3)}, {{1, 2}});
  const std::string text = format_partition(p);
  CHECK(text == "n=4\nblocks {1,4} {2} {3}\norder {2} < {3}\n");
  CHECK(parse_partition(text) == p);
  CHECK(describe(p) == "{1,4} {2} {3} | {2}<{3}");
  CHECK_THROWS_AS(parse_partition("n=3\nblocks {1} {2}\n"), ParseError);
  CHECK_THROWS_AS(parse_partition("n=3\nblocks {1,2} {2,3}\n"), ParseError);
}

TEST_CASE("canonical form ignores block listing order") {
  const OrderedPartition a(3, {bit(3), make_set({1, 2})}, {{0, 1}});
  const OrderedPartition b(3, {make_set({1, 2}), bit(3)}, {{1, 0}});
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
}

TEST_CASE("named random streams are reproducible and distinct") {
  Rng a = make_rng(7, "x", 1);
  Rng b = make_rng(7, "x", 1);
  Rng c = make_rng(7, "y", 1);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  Rng r = make_rng(1, "uniform");
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 30000; ++i) ++counts[uniform_index(r, 3)];
  for (int k : counts) CHECK(std::abs(k - 10000) < 500);
}
