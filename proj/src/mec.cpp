#include "cycdisc/mec.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace cycdisc {

GraphIndex::GraphIndex(const DirectedGraph& g) : n(g.n()), children(g.n() + 1, 0), anc(g.n() + 1, 0), padj(g.n() + 1, 0) {
  for (Vertex v = 1; v <= n; ++v) {
    children[v] = g.children(v);
    anc[v] = ancestors(g, bit(v));
  }
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      bool adjacent = g.has_edge(a, b) || g.has_edge(b, a) || (children[a] & children[b] & (anc[a] | anc[b])) != 0;
      if (adjacent) {
        padj[a] |= bit(b);
        padj[b] |= bit(a);
      }
    }
  }
}

bool GraphIndex::unshielded(Vertex a, Vertex b, Vertex c) const {
  return a != b && b != c && a != c && p_adjacent(a, b) && p_adjacent(c, b) && !p_adjacent(a, c);
}

TripleKind GraphIndex::kind(Vertex a, Vertex b, Vertex c) const {
  if (ancestor(b, a) || ancestor(b, c)) return TripleKind::conductor;
  if ((children[a] & children[c] & anc[b]) != 0) return TripleKind::perfect_non_conductor;
  return TripleKind::imperfect_non_conductor;
}

std::set<Edge> p_adjacencies(const DirectedGraph& g) {
  GraphIndex gi(g);
  std::set<Edge> out;
  for (Vertex a = 1; a <= g.n(); ++a) {
    for_each_vertex(gi.padj[a], [&](Vertex b) {
      if (a < b) out.emplace(a, b);
    });
  }
  return out;
}

std::vector<TripleClass> classify_triples(const DirectedGraph& g) {
  GraphIndex gi(g);
  std::vector<TripleClass> out;
  for (Vertex b = 1; b <= g.n(); ++b) {
    for_each_vertex(gi.padj[b], [&](Vertex a) {
      for_each_vertex(gi.padj[b] & ~gi.padj[a], [&](Vertex c) {
        if (a < c) out.push_back({{a, b, c}, gi.kind(a, b, c)});
      });
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

class ItineraryWalker {
 public:
  ItineraryWalker(const GraphIndex& gi, std::vector<Itinerary>& out) : gi_(gi), out_(out) {}

  void run() {
    for (Vertex a0 = 1; a0 <= gi_.n; ++a0) {
      for_each_vertex(gi_.padj[a0], [&](Vertex a1) {
        if (!gi_.ancestor(a0, a1) || gi_.ancestor(a1, a0)) return;
        path_ = {a0, a1};
        extend();
      });
    }
  }

 private:
  // path_ = a0..ak with k >= 1; try every way to continue or close it.
  void extend() {
    const Vertex last = path_.back();
    VertexSet used = 0;
    VertexSet covered = 0;
    for (std::size_t i = 0; i < path_.size(); ++i) {
      used |= bit(path_[i]);
      if (i + 1 < path_.size()) covered |= gi_.padj[path_[i]];
    }
    const VertexSet candidates = gi_.padj[last] & ~used & ~covered;
    const Vertex a1 = path_[1];
    for_each_vertex(candidates, [&](Vertex x) {
      if (gi_.ancestor(x, last) && !gi_.ancestor(a1, x)) {
        path_.push_back(x);
        out_.push_back(path_);
        path_.pop_back();
      }
      const bool middle_ok = gi_.ancestor(last, x) && gi_.ancestor(x, last);
      if (middle_ok && static_cast<int>(path_.size()) + 1 <= gi_.n - 1) {
        path_.push_back(x);
        extend();
        path_.pop_back();
      }
    });
  }

  const GraphIndex& gi_;
  std::vector<Itinerary>& out_;
  Itinerary path_;
};

}  // namespace

std::vector<Itinerary> mutually_exclusive(const GraphIndex& gi) {
  std::vector<Itinerary> out;
  ItineraryWalker(gi, out).run();
  std::sort(out.begin(), out.end(), [](const Itinerary& x, const Itinerary& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

std::vector<Itinerary> mutually_exclusive(const DirectedGraph& g) { return mutually_exclusive(GraphIndex(g)); }

bool EquivalenceReport::equivalent() const {
  return std::all_of(conditions.begin(), conditions.end(), [](bool c) { return c; });
}

namespace {

std::set<Triple> triples_of_kind(const GraphIndex& gi, TripleKind kind) {
  std::set<Triple> out;
  for (Vertex b = 1; b <= gi.n; ++b) {
    for_each_vertex(gi.padj[b], [&](Vertex a) {
      for_each_vertex(gi.padj[b] & ~gi.padj[a], [&](Vertex c) {
        if (a != c && gi.kind(a, b, c) == kind) out.insert({a, b, c});
      });
    });
  }
  return out;
}

}  // namespace

EquivalenceReport markov_equivalence_report(const DirectedGraph& g1, const DirectedGraph& g2) {
  if (g1.n() != g2.n()) throw std::invalid_argument("graphs have different vertex counts");
  const GraphIndex x(g1);
  const GraphIndex y(g2);
  EquivalenceReport r;
  r.conditions[0] = x.padj == y.padj;

  const auto cond_x = triples_of_kind(x, TripleKind::conductor);
  const auto perf_x = triples_of_kind(x, TripleKind::perfect_non_conductor);
  const auto imp_x = triples_of_kind(x, TripleKind::imperfect_non_conductor);
  const auto imp_y = triples_of_kind(y, TripleKind::imperfect_non_conductor);
  r.conditions[1] = cond_x == triples_of_kind(y, TripleKind::conductor);
  r.conditions[2] = perf_x == triples_of_kind(y, TripleKind::perfect_non_conductor);

  std::vector<Triple> imperfect_both;
  std::set_intersection(imp_x.begin(), imp_x.end(), imp_y.begin(), imp_y.end(), std::back_inserter(imperfect_both));
  bool c4 = true;
  for (const auto& s : imperfect_both) {
    for (const auto& t : imperfect_both) {
      if (s[0] != t[0] || s[2] != t[2]) continue;
      if (x.ancestor(s[1], t[1]) != y.ancestor(s[1], t[1])) c4 = false;
    }
  }
  r.conditions[3] = c4;

  const auto me_x = mutually_exclusive(x);
  const auto me_y = mutually_exclusive(y);
  r.conditions[4] = me_x == me_y;

  bool c6 = true;
  const std::set<Itinerary> me_y_set(me_y.begin(), me_y.end());
  const std::set<Triple> imperfect_set(imperfect_both.begin(), imperfect_both.end());
  for (const auto& it : me_x) {
    if (!me_y_set.count(it)) continue;
    const Vertex a0 = it.front();
    const Vertex last = it.back();
    const Vertex a1 = it[1];
    for (Vertex b = 1; b <= x.n; ++b) {
      if (!imperfect_set.count({a0, b, last})) continue;
      if (x.ancestor(a1, b) != y.ancestor(a1, b)) c6 = false;
    }
  }
  r.conditions[5] = c6;
  return r;
}

bool markov_equivalent(const DirectedGraph& g1, const DirectedGraph& g2) {
  return markov_equivalence_report(g1, g2).equivalent();
}

bool ci_equivalent(const DirectedGraph& g1, const DirectedGraph& g2, int guard) {
  if (g1.n() != g2.n()) throw std::invalid_argument("graphs have different vertex counts");
  return enumerate_ci(g1, guard) == enumerate_ci(g2, guard);
}

}  // namespace cycdisc
