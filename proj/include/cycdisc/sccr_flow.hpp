#pragma once

#include <array>
#include <vector>

#include "cycdisc/sccr.hpp"

namespace cycdisc {

// Candidate edges for the exhaustive solver. tilde_a holds one orientation per
// a_c pair, namely (min,max); tilde_e is tilde_a followed by b_c.
struct FlowProblem {
  explicit FlowProblem(const SccrInstance& inst);

  SccrInstance inst;  // normalized
  std::vector<Edge> tilde_a;
  std::vector<Edge> tilde_e;
};

// Three conditions on a removed subset y of tilde_e: every com_ch pair keeps a
// common child through b_c \ y, no no_com_ch pair does, and every removed pair
// (a,c) still has a wedge a -> b <- c in C whose four orientations avoid y.
bool is_removable(const FlowProblem& fp, const std::vector<Edge>& y);

// tilde_a \ y, in tilde_a order. Assignments x are indexed the same way.
std::vector<Edge> free_edges(const FlowProblem& fp, const std::vector<Edge>& y);

// Constraint sweep over all nonempty proper U of c:
//   x(in(U)) - x(out(U)) <= |out(U)| - 1.
bool flow_member(const std::vector<Edge>& free, const std::vector<int>& x, VertexSet c);

// Same answer via strong connectivity of c after flipping the edges with x = -1.
bool flow_member_scc(const std::vector<Edge>& free, const std::vector<int>& x, VertexSet c);

// tilde_e with y removed and every free edge with x = -1 reversed, sorted.
std::vector<Edge> apply_assignment(const FlowProblem& fp, const std::vector<Edge>& y, const std::vector<int>& x);

// Weight vector of the wedge (a,b,c) over `free`: -1 on (b,a) and (b,c), +1 on
// (a,b) and (c,b), 0 elsewhere.
std::vector<int> weight_vector(const std::vector<Edge>& free, const std::array<Vertex, 3>& abc);
// Maximum of w.y over y in {-1,0}^free.
int weight_max(const std::vector<int>& w);
int dot(const std::vector<int>& w, const std::vector<int>& x);

}  // namespace cycdisc
