#include "cycdisc/graph.hpp"

#include <stdexcept>

#include "text_util.hpp"

namespace cycdisc {

DirectedGraph::DirectedGraph(int n) : n_(n), out_(n + 1, 0), in_(n + 1, 0) {
  if (n < 0 || n > kMaxVertices) {
    throw std::invalid_argument("vertex count must be in 0.." + std::to_string(kMaxVertices));
  }
}

DirectedGraph::DirectedGraph(int n, const std::vector<Edge>& edges) : DirectedGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void DirectedGraph::add_edge(Vertex u, Vertex v) {
  if (u < 1 || u > n_ || v < 1 || v > n_) {
    throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") has an endpoint outside 1.." + std::to_string(n_));
  }
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  out_[u] |= bit(v);
  in_[v] |= bit(u);
}

void DirectedGraph::remove_edge(Vertex u, Vertex v) {
  out_[u] &= ~bit(v);
  in_[v] &= ~bit(u);
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 1; u <= n_; ++u) {
    for_each_vertex(out_[u], [&](Vertex v) { out.emplace_back(u, v); });
  }
  return out;
}

std::size_t DirectedGraph::edge_count() const {
  std::size_t total = 0;
  for (Vertex u = 1; u <= n_; ++u) total += static_cast<std::size_t>(set_size(out_[u]));
  return total;
}

DirectedGraph parse_graph(std::string_view text) {
  auto lines = detail::content_lines(text);
  const int n = detail::parse_header(lines, kMaxVertices);
  DirectedGraph g(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    auto nums = detail::integers(line, line.text, "");
    if (nums.size() != 2) detail::fail(line, "expected \"u v\"");
    const int u = nums[0];
    const int v = nums[1];
    if (u < 1 || u > n || v < 1 || v > n) detail::fail(line, "vertex out of range 1.." + std::to_string(n));
    if (u == v) detail::fail(line, "self-loop");
    g.add_edge(u, v);
  }
  return g;
}

std::string format_graph(const DirectedGraph& g) {
  std::string out = "n=" + std::to_string(g.n()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

std::vector<VertexSet> reachability(const DirectedGraph& g) {
  const int n = g.n();
  std::vector<VertexSet> reach(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) reach[v] = descendants(g, bit(v));
  return reach;
}

VertexSet ancestors(const DirectedGraph& g, VertexSet s) {
  VertexSet seen = s;
  VertexSet frontier = s;
  while (frontier != 0) {
    VertexSet next = 0;
    for_each_vertex(frontier, [&](Vertex v) { next |= g.parents(v); });
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

VertexSet descendants(const DirectedGraph& g, VertexSet s) {
  VertexSet seen = s;
  VertexSet frontier = s;
  while (frontier != 0) {
    VertexSet next = 0;
    for_each_vertex(frontier, [&](Vertex v) { next |= g.children(v); });
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

std::vector<VertexSet> scc(const DirectedGraph& g) {
  const auto reach = reachability(g);
  std::vector<VertexSet> out;
  VertexSet assigned = 0;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (contains(assigned, v)) continue;
    VertexSet comp = 0;
    for_each_vertex(reach[v], [&](Vertex w) {
      if (contains(reach[w], v)) comp |= bit(w);
    });
    assigned |= comp;
    out.push_back(comp);
  }
  return out;
}

OrderedPartition induced_partition(const DirectedGraph& g) {
  const auto reach = reachability(g);
  auto blocks = scc(g);
  std::vector<std::pair<int, int>> order;
  const int k = static_cast<int>(blocks.size());
  for (int i = 0; i < k; ++i) {
    const VertexSet from = reach[lowest(blocks[i])];
    for (int j = 0; j < k; ++j) {
      if (i != j && (from & blocks[j]) != 0) order.emplace_back(i, j);
    }
  }
  return OrderedPartition(g.n(), std::move(blocks), order);
}

}  // namespace cycdisc
