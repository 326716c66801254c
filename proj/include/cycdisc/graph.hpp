#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cycdisc/partition.hpp"
#include "cycdisc/vertex_set.hpp"

namespace cycdisc {

// Directed graph on vertices 1..n. 2-cycles are allowed, self-loops are not.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int n);
  DirectedGraph(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  VertexSet vertices() const { return full_set(n_); }

  // Throws std::invalid_argument on a self-loop or an out-of-range endpoint.
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const { return contains(out_[u], v); }

  VertexSet children(Vertex v) const { return out_[v]; }
  VertexSet parents(Vertex v) const { return in_[v]; }

  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  bool operator==(const DirectedGraph& other) const = default;

 private:
  int n_ = 0;
  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
};

// "n=<count>" followed by one "u v" line per edge; duplicates collapse.
DirectedGraph parse_graph(std::string_view text);
std::string format_graph(const DirectedGraph& g);

// reach[v] = vertices reachable from v by a directed path, v included.
std::vector<VertexSet> reachability(const DirectedGraph& g);

// Reflexive: every member of s is its own ancestor (and descendant).
VertexSet ancestors(const DirectedGraph& g, VertexSet s);
VertexSet descendants(const DirectedGraph& g, VertexSet s);

// Strongly connected components, sorted by smallest vertex.
std::vector<VertexSet> scc(const DirectedGraph& g);

// Blocks are the SCCs; C1 < C2 iff some directed path leads from C1 into C2.
OrderedPartition induced_partition(const DirectedGraph& g);

}  // namespace cycdisc
