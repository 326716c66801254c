#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cycdisc/graph.hpp"
#include "cycdisc/vertex_set.hpp"

namespace cycdisc {

// d-connection via a search over (vertex, direction of arrival) states. A collider
// is open when it is an ancestor of z; any other inner vertex is open when it is
// outside z. Requires a != b and z disjoint from {a,b}.
bool d_connected(const DirectedGraph& g, Vertex a, Vertex b, VertexSet z);

// Vertices d-connected to a given z (a itself and members of z excluded).
VertexSet d_connected_set(const DirectedGraph& g, Vertex a, VertexSet z);

// Same question answered by separation in the moral graph of the subgraph induced
// on the ancestors of {a,b} and z.
bool d_connected_moral(const DirectedGraph& g, Vertex a, Vertex b, VertexSet z);

struct CiStatement {
  Vertex a = 0;
  Vertex b = 0;
  VertexSet z = 0;
  auto operator<=>(const CiStatement&) const = default;
};

inline constexpr int kCiGuard = 12;
inline constexpr int kCiOracleMaxN = 16;

// A set of statements a _||_ b | z, symmetric in a and b. Storage is a dense bit
// table over (a, b, z), so lookups are constant time.
class CiOracle {
 public:
  CiOracle() = default;
  explicit CiOracle(int n);

  int n() const { return n_; }
  void add(Vertex a, Vertex b, VertexSet z);
  bool independent(Vertex a, Vertex b, VertexSet z) const;
  bool dependent(Vertex a, Vertex b, VertexSet z) const { return !independent(a, b, z); }
  std::size_t size() const { return count_; }

  // Canonical statements (a < b), sorted.
  std::vector<CiStatement> statements() const;

  bool operator==(const CiOracle& other) const = default;

 private:
  std::size_t index(Vertex a, Vertex b, VertexSet z) const;

  int n_ = 0;
  std::vector<std::uint64_t> bits_;
  std::size_t count_ = 0;
};

// Every d-separation statement of g. Throws GuardError when g.n() > guard.
CiOracle enumerate_ci(const DirectedGraph& g, int guard = kCiGuard);

// "n=<count>" header, then one "a _||_ b | {z1,z2}" line per statement.
std::string format_ci(const CiOracle& ci);
CiOracle parse_ci(std::string_view text);

}  // namespace cycdisc
