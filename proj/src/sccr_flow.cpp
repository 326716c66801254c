#include "cycdisc/sccr_flow.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "cycdisc/errors.hpp"

namespace cycdisc {

namespace {

using Mask = std::uint32_t;

// Strong connectivity of c under the given edges; edges leaving c are ignored.
bool strongly_connected(VertexSet c, const std::vector<Edge>& edges, int n) {
  if (c == 0) return false;
  std::vector<VertexSet> out(n + 1, 0);
  std::vector<VertexSet> in(n + 1, 0);
  for (auto [u, v] : edges) {
    if (contains(c, u) && contains(c, v)) {
      out[u] |= bit(v);
      in[v] |= bit(u);
    }
  }
  auto closure = [&](const std::vector<VertexSet>& adj) {
    VertexSet seen = bit(lowest(c));
    VertexSet frontier = seen;
    while (frontier != 0) {
      VertexSet next = 0;
      for_each_vertex(frontier, [&](Vertex v) { next |= adj[v]; });
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  };
  return (closure(out) & closure(in) & c) == c;
}

struct Wedge {
  Vertex a, b, c;
  int ia, ic;  // tilde_e indices of the pairs {a,b} and {c,b}
};

// Index structures shared by the solver and the public helpers.
class FlowIndex {
 public:
  explicit FlowIndex(const FlowProblem& fp)
      : fp_(fp), m_(fp.inst), n_(fp.inst.n), k_(static_cast<int>(fp.tilde_a.size())),
        size_(static_cast<int>(fp.tilde_e.size())), pair_(static_cast<std::size_t>((n_ + 1) * (n_ + 1)), -1) {
    for (int i = 0; i < size_; ++i) {
      auto [u, v] = fp.tilde_e[i];
      pair_[slot(u, v)] = i;
      pair_[slot(v, u)] = i;
    }
    for_each_vertex(m_.c, [&](Vertex b) {
      for (Vertex a = 1; a <= n_; ++a) {
        const int ia = pair(a, b);
        if (ia < 0) continue;
        for_each_vertex(m_.c, [&](Vertex c) {
          const int ic = pair(c, b);
          if (c == a || ic < 0) return;
          wedges_.push_back({a, b, c, ia, ic});
          if (pair(a, c) < 0) forbidden_.push_back(wedges_.size() - 1);
        });
      }
    });
  }

  int pair(Vertex u, Vertex v) const { return pair_[slot(u, v)]; }
  int size() const { return size_; }
  int free_count() const { return k_; }

  Mask mask_of(const std::vector<Edge>& y) const {
    Mask out = 0;
    for (auto [u, v] : y) {
      const int i = pair(u, v);
      if (i < 0 || fp_.tilde_e[i] != Edge{u, v}) throw std::invalid_argument("edge not in the candidate set");
      out |= Mask{1} << i;
    }
    return out;
  }

  bool removable(Mask y) const {
    auto kept_b = [&](Vertex u, Vertex b) {
      const int i = pair(u, b);
      return i >= k_ && ((y >> i) & 1U) == 0;
    };
    auto shared_child = [&](Vertex u, Vertex v) {
      bool found = false;
      for_each_vertex(m_.c, [&](Vertex b) { found = found || (kept_b(u, b) && kept_b(v, b)); });
      return found;
    };
    for (auto [u, v] : fp_.inst.com_ch) {
      if (u < v && !shared_child(u, v)) return false;
    }
    for (auto [u, v] : fp_.inst.no_com_ch) {
      if (u < v && shared_child(u, v)) return false;
    }
    for (int i = 0; i < size_; ++i) {
      if (((y >> i) & 1U) == 0) continue;
      auto [a, c] = fp_.tilde_e[i];
      if (!intact_wedge(a, c, y, nullptr)) return false;
    }
    return true;
  }

  // Some wedge a -> b <- c avoiding y; with `j` set, its weight must also reach the maximum.
  bool intact_wedge(Vertex a, Vertex c, Mask y, const Mask* j) const {
    for (const Wedge& w : wedges_) {
      if (w.a != a || w.c != c) continue;
      if (((y >> w.ia) & 1U) != 0 || ((y >> w.ic) & 1U) != 0) continue;
      if (!j || at_max(w, *j)) return true;
    }
    return false;
  }

  // w.x equals its maximum over {-1,0} assignments.
  bool at_max(const Wedge& w, Mask j) const {
    int value = 0;
    int best = 0;
    for (int i : {w.ia, w.ic}) {
      if (i >= k_) continue;
      const int coef = fp_.tilde_e[i].second == w.b ? 1 : -1;
      const int x = ((j >> i) & 1U) != 0 ? -1 : 0;
      value += coef * x;
      if (coef < 0) ++best;
    }
    return value == best;
  }

  std::vector<Edge> edges(Mask y, Mask j) const {
    std::vector<Edge> out;
    for (int i = 0; i < size_; ++i) {
      if (((y >> i) & 1U) != 0) continue;
      const Edge e = fp_.tilde_e[i];
      out.push_back(((j >> i) & 1U) != 0 ? Edge{e.second, e.first} : e);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool accepts(Mask y, Mask j) const {
    if (!strongly_connected(m_.c, edges(y, j), n_)) return false;
    for (std::size_t f : forbidden_) {
      const Wedge& w = wedges_[f];
      if (((y >> w.ia) & 1U) != 0 || ((y >> w.ic) & 1U) != 0) continue;
      if (at_max(w, j)) return false;
    }
    for (int i = 0; i < size_; ++i) {
      if (((y >> i) & 1U) == 0) continue;
      auto [a, c] = fp_.tilde_e[i];
      if (!intact_wedge(a, c, y, &j)) return false;
    }
    return true;
  }

 private:
  std::size_t slot(Vertex u, Vertex v) const { return static_cast<std::size_t>(u * (n_ + 1) + v); }

  const FlowProblem& fp_;
  InstanceMasks m_;
  int n_;
  int k_;
  int size_;
  std::vector<int> pair_;
  std::vector<Wedge> wedges_;
  std::vector<std::size_t> forbidden_;
};

Mask flips(const std::vector<Edge>& free, const std::vector<int>& x, const FlowIndex& index) {
  Mask j = 0;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (x.at(i) == -1) j |= Mask{1} << index.pair(free[i].first, free[i].second);
  }
  return j;
}

void check_assignment(const std::vector<Edge>& free, const std::vector<int>& x) {
  if (x.size() != free.size()) throw std::invalid_argument("assignment length does not match the free edges");
}

}  // namespace

FlowProblem::FlowProblem(const SccrInstance& raw) : inst(normalized(raw)) {
  for (auto [u, v] : inst.a_c) {
    if (u < v) tilde_a.emplace_back(u, v);
  }
  tilde_e = tilde_a;
  tilde_e.insert(tilde_e.end(), inst.b_c.begin(), inst.b_c.end());
}

bool is_removable(const FlowProblem& fp, const std::vector<Edge>& y) {
  const FlowIndex index(fp);
  return index.removable(index.mask_of(y));
}

std::vector<Edge> free_edges(const FlowProblem& fp, const std::vector<Edge>& y) {
  std::vector<Edge> out;
  for (Edge e : fp.tilde_a) {
    if (std::find(y.begin(), y.end(), e) == y.end()) out.push_back(e);
  }
  return out;
}

bool flow_member(const std::vector<Edge>& free, const std::vector<int>& x, VertexSet c) {
  check_assignment(free, x);
  const auto cm = members(c);
  const std::size_t k = cm.size();
  for (std::uint64_t sub = 1; sub + 1 < (std::uint64_t{1} << k); ++sub) {
    VertexSet u = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((sub >> i) & 1U) u |= bit(cm[i]);
    }
    int lhs = 0;
    int out_size = 0;
    for (std::size_t i = 0; i < free.size(); ++i) {
      const bool from = contains(u, free[i].first);
      const bool to = contains(u, free[i].second);
      if (!from && to) lhs += x[i];
      if (from && !to) {
        lhs -= x[i];
        ++out_size;
      }
    }
    if (lhs > out_size - 1) return false;
  }
  return true;
}

bool flow_member_scc(const std::vector<Edge>& free, const std::vector<int>& x, VertexSet c) {
  check_assignment(free, x);
  std::vector<Edge> oriented;
  int n = 0;
  for (std::size_t i = 0; i < free.size(); ++i) {
    const Edge e = free[i];
    oriented.push_back(x[i] == -1 ? Edge{e.second, e.first} : e);
    n = std::max({n, e.first, e.second});
  }
  for_each_vertex(c, [&](Vertex v) { n = std::max(n, v); });
  return strongly_connected(c, oriented, n);
}

std::vector<Edge> apply_assignment(const FlowProblem& fp, const std::vector<Edge>& y, const std::vector<int>& x) {
  const FlowIndex index(fp);
  const auto free = free_edges(fp, y);
  check_assignment(free, x);
  return index.edges(index.mask_of(y), flips(free, x, index));
}

std::vector<int> weight_vector(const std::vector<Edge>& free, const std::array<Vertex, 3>& abc) {
  const auto [a, b, c] = abc;
  std::vector<int> w(free.size(), 0);
  for (std::size_t i = 0; i < free.size(); ++i) {
    const Edge e = free[i];
    if (e == Edge{b, a} || e == Edge{b, c}) w[i] = -1;
    if (e == Edge{a, b} || e == Edge{c, b}) w[i] = 1;
  }
  return w;
}

int weight_max(const std::vector<int>& w) {
  int best = 0;
  for (int v : w) best += v < 0 ? -v : 0;
  return best;
}

int dot(const std::vector<int>& w, const std::vector<int>& x) {
  if (w.size() != x.size()) throw std::invalid_argument("vector lengths differ");
  int s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
  return s;
}

SccrOutcome solve_flow(const SccrInstance& raw, int guard) {
  const FlowProblem fp(raw);
  const auto problems = check_instance(fp.inst);
  if (!problems.empty()) throw std::invalid_argument("invalid SCCR instance: " + problems.front());
  const int size = static_cast<int>(fp.tilde_e.size());
  if (size > guard) {
    throw GuardError("flow solver refuses " + std::to_string(size) + " candidate edges (limit " +
                     std::to_string(guard) + ")");
  }
  const FlowIndex index(fp);
  const int k = index.free_count();

  // Removed sets by increasing size, then lexicographically by edge index.
  std::vector<Mask> order(std::size_t{1} << size);
  for (Mask y = 0; y < order.size(); ++y) order[y] = y;
  std::stable_sort(order.begin(), order.end(), [](Mask l, Mask r) {
    const int pl = std::popcount(l);
    const int pr = std::popcount(r);
    if (pl != pr) return pl < pr;
    const Mask diff = l ^ r;
    return (l & diff & (~diff + 1)) != 0;
  });

  SccrOutcome out;
  out.attempts = 1;
  const Mask a_mask = k == 0 ? 0 : ((Mask{1} << k) - 1);
  for (Mask y : order) {
    if (!index.removable(y)) continue;
    const Mask free = a_mask & ~y;
    // Every subset of the free A edges in increasing mask order.
    for (Mask j = 0;; j = (j - free) & free) {
      if (index.accepts(y, j)) {
        out.edges = index.edges(y, j);
        return out;
      }
      if (j == free) break;
    }
  }
  out.reason = "no removable set and flip assignment meet the wedge conditions";
  return out;
}

}  // namespace cycdisc
