#pragma once

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "cycdisc/dsep.hpp"
#include "cycdisc/graph.hpp"

namespace cycdisc {

using Triple = std::array<Vertex, 3>;
using Itinerary = std::vector<Vertex>;

enum class TripleKind { conductor, perfect_non_conductor, imperfect_non_conductor };

struct TripleClass {
  Triple triple;
  TripleKind kind;
  auto operator<=>(const TripleClass&) const = default;
};

// Graph facts shared by the feature computations.
struct GraphIndex {
  explicit GraphIndex(const DirectedGraph& g);

  bool ancestor(Vertex u, Vertex v) const { return contains(anc[v], u); }
  bool p_adjacent(Vertex u, Vertex v) const { return contains(padj[u], v); }
  bool unshielded(Vertex a, Vertex b, Vertex c) const;
  TripleKind kind(Vertex a, Vertex b, Vertex c) const;

  int n;
  std::vector<VertexSet> children;
  std::vector<VertexSet> anc;   // anc[v]: ancestors of v, v included
  std::vector<VertexSet> padj;  // padj[v]: vertices p-adjacent to v
};

// Unordered p-adjacent pairs (a < b).
std::set<Edge> p_adjacencies(const DirectedGraph& g);

// Every unshielded triple (a,b,c) with a < c, labelled.
std::vector<TripleClass> classify_triples(const DirectedGraph& g);

// Mutually exclusive uncovered itineraries (a0,...,a_{t+1}) for 1 <= t <= n-2,
// ordered by length, then lexicographically.
std::vector<Itinerary> mutually_exclusive(const DirectedGraph& g);
std::vector<Itinerary> mutually_exclusive(const GraphIndex& gi);

struct EquivalenceReport {
  std::array<bool, 6> conditions{};
  bool equivalent() const;
};

// The six-condition characterisation; throws std::invalid_argument when the
// vertex counts differ.
EquivalenceReport markov_equivalence_report(const DirectedGraph& g1, const DirectedGraph& g2);
bool markov_equivalent(const DirectedGraph& g1, const DirectedGraph& g2);

// Equality of the full d-separation sets; subject to the CI enumeration guard.
bool ci_equivalent(const DirectedGraph& g1, const DirectedGraph& g2, int guard = kCiGuard);

}  // namespace cycdisc
