#include "cycdisc/vertex_set.hpp"

namespace cycdisc {

VertexSet make_set(std::initializer_list<Vertex> vs) {
  VertexSet s = 0;
  for (Vertex v : vs) s |= bit(v);
  return s;
}

VertexSet make_set(const std::vector<Vertex>& vs) {
  VertexSet s = 0;
  for (Vertex v : vs) s |= bit(v);
  return s;
}

std::vector<Vertex> members(VertexSet s) {
  std::vector<Vertex> out;
  out.reserve(set_size(s));
  for_each_vertex(s, [&](Vertex v) { out.push_back(v); });
  return out;
}

std::string format_set(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for_each_vertex(s, [&](Vertex v) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  });
  out += '}';
  return out;
}

}  // namespace cycdisc
