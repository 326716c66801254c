#pragma once

// Slow, independent reference implementations used only by the tests.

#include <cstdint>
#include <optional>
#include <vector>

#include "cycdisc/graph.hpp"
#include "cycdisc/partition.hpp"
#include "cycdisc/sccr.hpp"

namespace oracle {

using cycdisc::DirectedGraph;
using cycdisc::Edge;
using cycdisc::Vertex;
using cycdisc::VertexSet;

// d-connection by enumerating every simple path between a and b.
bool d_connected_paths(const DirectedGraph& g, Vertex a, Vertex b, VertexSet z);

// reach[u][v]: a directed path from u to v exists (reflexive), by Floyd-Warshall.
std::vector<std::vector<bool>> closure(const DirectedGraph& g);

// Components as vertex sets sorted by smallest member, from mutual reachability.
std::vector<VertexSet> components(const DirectedGraph& g);

// Every ordered partition of [n] from all set partitions and all relations
// between blocks that form a strict partial order.
std::vector<cycdisc::OrderedPartition> all_ordered_partitions(int n);

// Every graph on n vertices, the i-th built from the bits of i.
DirectedGraph graph_from_code(int n, std::uint64_t code);

// A valid edge set using at most one orientation per prescribed pair, found by
// trying all 3^|A pairs| * 2^|B| choices; nothing when none exists.
std::optional<std::vector<Edge>> brute_force_sccr(const cycdisc::SccrInstance& inst);

// Instances derived from the true decomposition of random graphs, keeping those
// with |C| between 2 and max_c and at most max_edges candidate edges.
std::vector<cycdisc::SccrInstance> random_instances(std::size_t count, int max_c, int max_edges, std::uint64_t seed);

}  // namespace oracle
