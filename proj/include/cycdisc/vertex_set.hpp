#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace cycdisc {

// Vertices are labelled 1..n. A VertexSet stores vertex v in bit v, so bit 0 is never used.
using Vertex = int;
using VertexSet = std::uint64_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr int kMaxVertices = 62;

constexpr VertexSet bit(Vertex v) { return VertexSet{1} << v; }
constexpr bool contains(VertexSet s, Vertex v) { return ((s >> v) & 1U) != 0; }
constexpr VertexSet full_set(int n) { return ((VertexSet{1} << (n + 1)) - 1) & ~VertexSet{1}; }
inline int set_size(VertexSet s) { return std::popcount(s); }
inline Vertex lowest(VertexSet s) { return std::countr_zero(s); }

template <class F>
void for_each_vertex(VertexSet s, F&& f) {
  while (s != 0) {
    f(static_cast<Vertex>(std::countr_zero(s)));
    s &= s - 1;
  }
}

VertexSet make_set(std::initializer_list<Vertex> vs);
VertexSet make_set(const std::vector<Vertex>& vs);
std::vector<Vertex> members(VertexSet s);

// "{1,2,5}"; the empty set prints as "{}".
std::string format_set(VertexSet s);

}  // namespace cycdisc
