#include "cycdisc/dsep.hpp"

#include <stdexcept>

#include "cycdisc/errors.hpp"
#include "text_util.hpp"

namespace cycdisc {

namespace {

void check_query(const DirectedGraph& g, Vertex a, Vertex b, VertexSet z) {
  if (a < 1 || a > g.n() || b < 1 || b > g.n()) throw std::invalid_argument("query vertex out of range");
  if (a == b) throw std::invalid_argument("d-connection query needs two distinct vertices");
  if (contains(z, a) || contains(z, b)) throw std::invalid_argument("conditioning set contains a query vertex");
  if ((z & ~g.vertices()) != 0) throw std::invalid_argument("conditioning set out of range");
}

}  // namespace

VertexSet d_connected_set(const DirectedGraph& g, Vertex a, VertexSet z) {
  const VertexSet open_colliders = ancestors(g, z);
  // up: arrived from a child (or the start); down: arrived from a parent.
  VertexSet seen_up = bit(a);
  VertexSet seen_down = 0;
  VertexSet todo_up = bit(a);
  VertexSet todo_down = 0;
  while ((todo_up | todo_down) != 0) {
    VertexSet next_up = 0;
    VertexSet next_down = 0;
    for_each_vertex(todo_up & ~z, [&](Vertex v) {
      next_up |= g.parents(v);
      next_down |= g.children(v);
    });
    for_each_vertex(todo_down, [&](Vertex v) {
      if (!contains(z, v)) next_down |= g.children(v);
      if (contains(open_colliders, v)) next_up |= g.parents(v);
    });
    todo_up = next_up & ~seen_up;
    todo_down = next_down & ~seen_down;
    seen_up |= todo_up;
    seen_down |= todo_down;
  }
  return (seen_up | seen_down) & ~z & ~bit(a);
}

bool d_connected(const DirectedGraph& g, Vertex a, Vertex b, VertexSet z) {
  check_query(g, a, b, z);
  return contains(d_connected_set(g, a, z), b);
}

bool d_connected_moral(const DirectedGraph& g, Vertex a, Vertex b, VertexSet z) {
  check_query(g, a, b, z);
  const VertexSet keep = ancestors(g, z | bit(a) | bit(b));
  std::vector<VertexSet> nbr(g.n() + 1, 0);
  for_each_vertex(keep, [&](Vertex v) {
    const VertexSet pa = g.parents(v) & keep;
    nbr[v] |= pa | (g.children(v) & keep);
    for_each_vertex(pa, [&](Vertex u) { nbr[u] |= pa & ~bit(u); });
  });
  const VertexSet allowed = keep & ~z;
  VertexSet seen = bit(a);
  VertexSet frontier = bit(a);
  while (frontier != 0) {
    VertexSet next = 0;
    for_each_vertex(frontier, [&](Vertex v) { next |= nbr[v]; });
    frontier = next & allowed & ~seen;
    seen |= frontier;
  }
  return contains(seen, b);
}

CiOracle::CiOracle(int n) : n_(n) {
  if (n < 1 || n > kCiOracleMaxN) {
    throw GuardError("CI oracle supports 1.." + std::to_string(kCiOracleMaxN) + " vertices, got " + std::to_string(n));
  }
  const std::size_t total = static_cast<std::size_t>(n) * n << n;
  bits_.assign((total + 63) / 64, 0);
}

std::size_t CiOracle::index(Vertex a, Vertex b, VertexSet z) const {
  return ((static_cast<std::size_t>(a - 1) * n_ + static_cast<std::size_t>(b - 1)) << n_) |
         static_cast<std::size_t>(z >> 1);
}

void CiOracle::add(Vertex a, Vertex b, VertexSet z) {
  if (a < 1 || a > n_ || b < 1 || b > n_ || a == b) throw std::invalid_argument("bad CI statement endpoints");
  if (contains(z, a) || contains(z, b) || (z & ~full_set(n_)) != 0) {
    throw std::invalid_argument("bad CI conditioning set");
  }
  const std::size_t i = index(a, b, z);
  if ((bits_[i / 64] >> (i % 64)) & 1U) return;
  const std::size_t j = index(b, a, z);
  bits_[i / 64] |= std::uint64_t{1} << (i % 64);
  bits_[j / 64] |= std::uint64_t{1} << (j % 64);
  ++count_;
}

bool CiOracle::independent(Vertex a, Vertex b, VertexSet z) const {
  const std::size_t i = index(a, b, z);
  return ((bits_[i / 64] >> (i % 64)) & 1U) != 0;
}

std::vector<CiStatement> CiOracle::statements() const {
  std::vector<CiStatement> out;
  out.reserve(count_);
  for (Vertex a = 1; a <= n_; ++a) {
    for (Vertex b = a + 1; b <= n_; ++b) {
      const VertexSet rest = full_set(n_) & ~bit(a) & ~bit(b);
      for (VertexSet z = 0;; z = (z - rest) & rest) {
        if (independent(a, b, z)) out.push_back({a, b, z});
        if (z == rest) break;
      }
    }
  }
  return out;
}

CiOracle enumerate_ci(const DirectedGraph& g, int guard) {
  const int n = g.n();
  if (n > guard) {
    throw GuardError("CI enumeration refuses n=" + std::to_string(n) + " (limit " + std::to_string(guard) + ")");
  }
  CiOracle ci(n);
  for (Vertex a = 1; a <= n; ++a) {
    const VertexSet rest = g.vertices() & ~bit(a);
    for (VertexSet z = 0;; z = (z - rest) & rest) {
      const VertexSet connected = d_connected_set(g, a, z);
      for_each_vertex(rest & ~z & ~connected, [&](Vertex b) {
        if (b > a) ci.add(a, b, z);
      });
      if (z == rest) break;
    }
  }
  return ci;
}

std::string format_ci(const CiOracle& ci) {
  std::string out = "n=" + std::to_string(ci.n()) + "\n";
  for (const auto& s : ci.statements()) {
    out += std::to_string(s.a) + " _||_ " + std::to_string(s.b) + " | " + format_set(s.z) + "\n";
  }
  return out;
}

CiOracle parse_ci(std::string_view text) {
  auto lines = detail::content_lines(text);
  const int n = detail::parse_header(lines, kCiOracleMaxN);
  CiOracle ci(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    std::string_view t = line.text;
    auto sep = t.find("_||_");
    auto bar = t.find('|', sep == std::string_view::npos ? 0 : sep + 4);
    auto open = t.find('{');
    auto close = t.rfind('}');
    if (sep == std::string_view::npos || bar == std::string_view::npos || open == std::string_view::npos ||
        close == std::string_view::npos || open < bar || close < open || !detail::trim(t.substr(close + 1)).empty() ||
        !detail::trim(t.substr(bar + 1, open - bar - 1)).empty()) {
      detail::fail(line, "expected \"a _||_ b | {z1,...}\"");
    }
    auto left = detail::integers(line, t.substr(0, sep), "");
    auto right = detail::integers(line, t.substr(sep + 4, bar - sep - 4), "");
    auto zs = detail::integers(line, t.substr(open + 1, close - open - 1), ",");
    if (left.size() != 1 || right.size() != 1) detail::fail(line, "expected one vertex on each side");
    const int a = left[0];
    const int b = right[0];
    if (a < 1 || a > n || b < 1 || b > n) detail::fail(line, "vertex out of range");
    if (a == b) detail::fail(line, "statement about a single vertex");
    VertexSet z = 0;
    for (int v : zs) {
      if (v < 1 || v > n) detail::fail(line, "conditioning vertex out of range");
      if (v == a || v == b) detail::fail(line, "conditioning set contains a query vertex");
      z |= bit(v);
    }
    ci.add(a, b, z);
  }
  return ci;
}

}  // namespace cycdisc
