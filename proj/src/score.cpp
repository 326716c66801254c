#include "cycdisc/score.hpp"

#include <stdexcept>

namespace cycdisc {

namespace {

enum TripleType : unsigned char { kNone = 0, kBase = 1, kE2 = 2, kE3 = 3 };

// Score-side evaluation for one (ci, partition) pair. When `sets` is non-null the
// members are recorded as well as counted.
class Evaluator {
 public:
  Evaluator(const CiOracle& ci, const OrderedPartition& p, const ScoreOptions& opts)
      : ci_(ci), p_(p), opts_(opts), n_(p.n()) {
    if (ci.n() != p.n()) throw std::invalid_argument("CI set and partition disagree on n");
    const int k = p.block_count();
    down_.assign(k, 0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (p.leq(j, i)) down_[i] |= p.block(j);
      }
    }
    blk_.assign(n_ + 1, 0);
    for (Vertex v = 1; v <= n_; ++v) blk_[v] = p.block_of(v);
  }

  ScoreVector run(MecSummary* sets) {
    sets_ = sets;
    counts_.assign(static_cast<std::size_t>(n_ + 3), 0);
    compute_e1();
    compute_triples();
    compute_e4();
    compute_itineraries();
    ScoreVector s;
    s.entries = {e1_count_, e2_count_, e3_count_, e4_count_};
    for (int t = 2; t <= n_ - 2; ++t) s.entries.push_back(-counts_[t]);
    s.entries.push_back(e6_count_);
    return s;
  }

 private:
  bool below_max(int x, int y, int z) const { return p_.leq(x, y) || p_.leq(x, z); }
  VertexSet down_of(Vertex v) const { return down_[blk_[v]]; }
  unsigned char& type(Vertex a, Vertex b, Vertex c) {
    return types_[(static_cast<std::size_t>(a) * (n_ + 1) + b) * (n_ + 1) + c];
  }

  void compute_e1() {
    e1_.assign(n_ + 1, 0);
    for (Vertex a = 1; a <= n_; ++a) {
      for (Vertex b = a + 1; b <= n_; ++b) {
        const VertexSet z = (down_of(a) | down_of(b)) & ~bit(a) & ~bit(b);
        if (ci_.dependent(a, b, z)) {
          e1_[a] |= bit(b);
          e1_[b] |= bit(a);
          e1_count_ += 2;
          if (sets_) {
            sets_->e1.emplace(a, b);
            sets_->e1.emplace(b, a);
          }
        }
      }
    }
  }

  void compute_triples() {
    types_.assign(static_cast<std::size_t>(n_ + 1) * (n_ + 1) * (n_ + 1), kNone);
    for (Vertex b = 1; b <= n_; ++b) {
      for_each_vertex(e1_[b], [&](Vertex a) {
        for_each_vertex(e1_[b] & ~e1_[a] & ~bit(a), [&](Vertex c) {
          unsigned char t = kBase;
          if (below_max(blk_[b], blk_[a], blk_[c])) {
            t = kE2;
            ++e2_count_;
            if (sets_) sets_->e2.insert({a, b, c});
          } else {
            const VertexSet z = (down_of(a) | down_of(b) | down_of(c)) & ~bit(a) & ~bit(c);
            if (ci_.dependent(a, c, z)) {
              t = kE3;
              ++e3_count_;
              if (sets_) sets_->e3.insert({a, b, c});
            }
          }
          type(a, b, c) = t;
        });
      });
    }
  }

  // Middles b of (a,b,c) satisfying the base clauses and outside E2 and E3.
  VertexSet open_middles(Vertex a, Vertex c) {
    VertexSet out = 0;
    for_each_vertex(e1_[a] & e1_[c] & ~bit(a) & ~bit(c), [&](Vertex b) {
      if (type(a, b, c) == kBase) out |= bit(b);
    });
    return out;
  }

  void compute_e4() {
    for (Vertex a = 1; a <= n_; ++a) {
      for (Vertex c = 1; c <= n_; ++c) {
        if (a == c || contains(e1_[a], c)) continue;
        const VertexSet mids = open_middles(a, c);
        for_each_vertex(mids, [&](Vertex b1) {
          for_each_vertex(mids, [&](Vertex b2) {
            if (b1 == b2 && !opts_.e4_equal_pairs) return;
            if (!p_.leq(blk_[b1], blk_[b2])) return;
            ++e4_count_;
            if (sets_) sets_->e4.insert({Triple{a, b1, c}, Triple{a, b2, c}});
          });
        });
      }
    }
  }

  void compute_itineraries() {
    if (sets_) {
      for (int t = 1; t <= n_ - 2; ++t) sets_->d[t];
    }
    for (Vertex a0 = 1; a0 <= n_; ++a0) {
      for_each_vertex(e1_[a0], [&](Vertex a1) {
        // C(a1) must not sit at or below C(a0).
        if (p_.leq(blk_[a1], blk_[a0])) return;
        path_ = {a0, a1};
        extend();
      });
    }
  }

  void extend() {
    const Vertex last = path_.back();
    const int home = blk_[path_[1]];
    VertexSet used = 0;
    VertexSet covered = 0;
    for (std::size_t i = 0; i < path_.size(); ++i) {
      used |= bit(path_[i]);
      if (i + 1 < path_.size()) covered |= e1_[path_[i]];
    }
    const VertexSet candidates = e1_[last] & ~used & ~covered;
    for_each_vertex(candidates, [&](Vertex x) {
      if (!p_.leq(home, blk_[x])) close(x);
      if (blk_[x] == home && static_cast<int>(path_.size()) + 1 <= n_ - 1) {
        path_.push_back(x);
        extend();
        path_.pop_back();
      }
    });
  }

  void close(Vertex last) {
    const int t = static_cast<int>(path_.size()) - 1;
    ++counts_[t];
    const Vertex a0 = path_.front();
    const int home = blk_[path_[1]];
    if (sets_) {
      Itinerary it = path_;
      it.push_back(last);
      sets_->d[t].insert(it);
    }
    for_each_vertex(open_middles(a0, last), [&](Vertex b) {
      if (!p_.leq(home, blk_[b])) return;
      ++e6_count_;
      if (sets_) {
        Itinerary it = path_;
        it.push_back(last);
        sets_->e6.insert({std::move(it), Triple{a0, b, last}});
      }
    });
  }

  const CiOracle& ci_;
  const OrderedPartition& p_;
  ScoreOptions opts_;
  int n_;
  std::vector<VertexSet> down_;
  std::vector<int> blk_;
  std::vector<VertexSet> e1_;
  std::vector<unsigned char> types_;
  std::vector<long long> counts_;
  Itinerary path_;
  MecSummary* sets_ = nullptr;
  long long e1_count_ = 0;
  long long e2_count_ = 0;
  long long e3_count_ = 0;
  long long e4_count_ = 0;
  long long e6_count_ = 0;
};

}  // namespace

std::string format_score(const ScoreVector& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(s.entries[i]);
  }
  return out + ")";
}

std::set<Edge> compute_e1(const CiOracle& ci, const OrderedPartition& p) {
  MecSummary s;
  Evaluator(ci, p, {}).run(&s);
  return s.e1;
}

MecSummary compute_sets(const CiOracle& ci, const OrderedPartition& p, const ScoreOptions& opts) {
  MecSummary s;
  Evaluator(ci, p, opts).run(&s);
  return s;
}

ScoreVector score_vector(const CiOracle& ci, const OrderedPartition& p, const ScoreOptions& opts) {
  return Evaluator(ci, p, opts).run(nullptr);
}

MecSummary graph_summary(const DirectedGraph& g, const ScoreOptions& opts) {
  const GraphIndex gi(g);
  const int n = g.n();
  MecSummary s;
  for (Vertex a = 1; a <= n; ++a) {
    for_each_vertex(gi.padj[a], [&](Vertex b) { s.e1.emplace(a, b); });
  }
  std::vector<std::vector<Vertex>> imperfect_mid(static_cast<std::size_t>(n + 1) * (n + 1));
  auto mids = [&](Vertex a, Vertex c) -> std::vector<Vertex>& {
    return imperfect_mid[static_cast<std::size_t>(a) * (n + 1) + c];
  };
  for (Vertex b = 1; b <= n; ++b) {
    for_each_vertex(gi.padj[b], [&](Vertex a) {
      for_each_vertex(gi.padj[b] & ~gi.padj[a] & ~bit(a), [&](Vertex c) {
        switch (gi.kind(a, b, c)) {
          case TripleKind::conductor:
            s.e2.insert({a, b, c});
            break;
          case TripleKind::perfect_non_conductor:
            s.e3.insert({a, b, c});
            break;
          case TripleKind::imperfect_non_conductor:
            mids(a, c).push_back(b);
            break;
        }
      });
    });
  }
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex c = 1; c <= n; ++c) {
      for (Vertex b1 : mids(a, c)) {
        for (Vertex b2 : mids(a, c)) {
          if (b1 == b2 && !opts.e4_equal_pairs) continue;
          if (gi.ancestor(b1, b2)) s.e4.insert({Triple{a, b1, c}, Triple{a, b2, c}});
        }
      }
    }
  }
  for (int t = 1; t <= n - 2; ++t) s.d[t];
  for (const auto& it : mutually_exclusive(gi)) {
    const int t = static_cast<int>(it.size()) - 2;
    s.d[t].insert(it);
    for (Vertex b : mids(it.front(), it.back())) {
      if (gi.ancestor(it[1], b)) s.e6.insert({it, Triple{it.front(), b, it.back()}});
    }
  }
  return s;
}

namespace {

std::string fmt_triple(const Triple& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

std::string fmt_itinerary(const Itinerary& it) {
  std::string out = "(";
  for (std::size_t i = 0; i < it.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(it[i]);
  }
  return out + ")";
}

}  // namespace

std::string format_summary(const MecSummary& s) {
  std::string out = "E1 (" + std::to_string(s.e1.size()) + "):";
  for (auto [a, b] : s.e1) out += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  out += "\nE2 (" + std::to_string(s.e2.size()) + "):";
  for (const auto& t : s.e2) out += " " + fmt_triple(t);
  out += "\nE3 (" + std::to_string(s.e3.size()) + "):";
  for (const auto& t : s.e3) out += " " + fmt_triple(t);
  out += "\nE4 (" + std::to_string(s.e4.size()) + "):";
  for (const auto& [x, y] : s.e4) out += " [" + fmt_triple(x) + "," + fmt_triple(y) + "]";
  for (const auto& [t, its] : s.d) {
    out += "\nD" + std::to_string(t) + " (" + std::to_string(its.size()) + "):";
    for (const auto& it : its) out += " " + fmt_itinerary(it);
  }
  out += "\nE6 (" + std::to_string(s.e6.size()) + "):";
  for (const auto& [it, t] : s.e6) out += " [" + fmt_itinerary(it) + "," + fmt_triple(t) + "]";
  return out + "\n";
}

}  // namespace cycdisc
