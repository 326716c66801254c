#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cycdisc/vertex_set.hpp"

namespace cycdisc {

// A strongly-connected-component recovery problem on vertices 1..n: make C an SCC
// whose only cross edges come in from outside, whose p-adjacencies are exactly
// a_c and b_c, where every com_ch pair shares a child in C and no no_com_ch pair
// does. Edge lists are kept sorted and duplicate-free.
struct SccrInstance {
  int n = 0;
  VertexSet c = 0;
  std::vector<Edge> a_c;        // symmetric, inside C
  std::vector<Edge> b_c;        // outside -> C
  std::vector<Edge> com_ch;     // outside pairs
  std::vector<Edge> no_com_ch;  // outside pairs
  bool operator==(const SccrInstance&) const = default;
};

// Sorts and deduplicates every list; symmetrises a_c, com_ch and no_com_ch.
SccrInstance normalized(SccrInstance inst);

// Structural checks; returns a list of problems (empty when well formed).
std::vector<std::string> check_instance(const SccrInstance& inst);

// Document form, one section per line:
//   n=9
//   C {1,2,3,4,5,6}
//   A (1,3) (3,1) ...
//   B (7,1) ...
//   ComCh (7,8) (8,7)
//   NoComCh (7,9) (9,7)
std::string format_instance(const SccrInstance& inst);
SccrInstance parse_instance(std::string_view text);

// Bitmask view of an instance used by the solvers and validators.
struct InstanceMasks {
  explicit InstanceMasks(const SccrInstance& inst);

  bool in_c(Vertex v) const { return contains(c, v); }
  bool in_a(Vertex u, Vertex v) const { return contains(a[u], v); }
  bool in_b(Vertex u, Vertex v) const { return contains(b[u], v); }
  bool in_ab(Vertex u, Vertex v) const { return in_a(u, v) || in_b(u, v); }
  // u and v prescribed p-adjacent (either orientation listed).
  bool linked(Vertex u, Vertex v) const { return in_ab(u, v) || in_ab(v, u); }
  bool forbidden(Vertex u, Vertex v) const { return contains(no_com[u], v); }

  int n;
  VertexSet c;
  std::vector<VertexSet> a;       // a[u]: v with (u,v) in a_c
  std::vector<VertexSet> b;       // b[u]: v with (u,v) in b_c
  std::vector<VertexSet> no_com;  // symmetric
  std::vector<VertexSet> com;     // symmetric
};

// Multiset of current parents per vertex, indexed by vertex.
using ParentBag = std::vector<std::vector<Vertex>>;

// (a,b) is safe when every other parent v of b satisfies: (v,a) not in
// no_com_ch, and if v or a lies in C then v and a are prescribed p-adjacent.
bool is_safe(Edge e, const ParentBag& parents, const InstanceMasks& m);

// Two edges into the same vertex of C with distinct sources clash: both sources
// outside C and forbidden a common child, or one source in C and the two
// sources not prescribed p-adjacent.
bool are_incompatible(Edge e1, Edge e2, const InstanceMasks& m);

struct Validation {
  bool ok = true;
  std::vector<std::string> violations;
};

Validation validate_output(const std::vector<Edge>& e_c, const SccrInstance& inst);

struct SccrOutcome {
  std::optional<std::vector<Edge>> edges;  // sorted
  int attempts = 0;                        // attempts consumed
  std::string reason;                      // why it failed, empty on success
};

// Construct and correct: grows an almost-path of edges from a_c and b_c, repairs
// unsafe additions by removal or flipping, and jumps back to an earlier state
// when a repair would undo an earlier repair. n_attempts bounds the number of
// jump-backs and restarts. All random choices come from `seed`.
SccrOutcome construct_correct(const SccrInstance& inst, int n_attempts, std::uint64_t seed);

// Up to `runs` independent construct_correct runs; stops at the first success.
SccrOutcome construct_correct_runs(const SccrInstance& inst, int n_attempts, int runs, std::uint64_t seed);

// Exhaustive solver over removable sets and {-1,0} flip assignments; see
// sccr_flow.hpp for the pieces. Throws GuardError when |A|/2 + |B| > guard.
inline constexpr int kFlowGuard = 14;
SccrOutcome solve_flow(const SccrInstance& inst, int guard = kFlowGuard);

}  // namespace cycdisc
