#include "cycdisc/sccr.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "cycdisc/graph.hpp"
#include "cycdisc/rng.hpp"

namespace cycdisc {

namespace {

// Status codes for entries of D. kEcho stands for "the entry is the edge itself".
enum Code : int { kFlipped = -1, kRemoved = 0, kPreserve = 1, kComCh = 2, kEcho = 3 };

Edge canon(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }
Edge flip(Edge e) { return {e.second, e.first}; }

enum class Step { done, restart, failed };

// One execution of the construct-and-correct procedure. The lists D, code and
// cause are 0-based vectors, but every index stored in `cause` and every index
// the procedure reasons about is 1-based, so D[k] is d_[k - 1] and slices such
// as D[1..j-1] are inclusive on both ends.
class Construction {
 public:
  Construction(const SccrInstance& inst, int n_attempts, std::uint64_t seed)
      : inst_(inst), m_(inst), n_attempts_(n_attempts), rng_(make_rng(seed, "construct-correct")) {
    a_list_ = inst.a_c;
    b_list_ = inst.b_c;
    for (auto [u, v] : inst.com_ch) {
      if (u < v || std::find(inst.com_ch.begin(), inst.com_ch.end(), Edge{v, u}) == inst.com_ch.end()) {
        com_pairs_.push_back(canon(u, v));
      }
    }
    std::sort(com_pairs_.begin(), com_pairs_.end());
    com_pairs_.erase(std::unique(com_pairs_.begin(), com_pairs_.end()), com_pairs_.end());
    c_members_ = members(inst.c);
    std::set<Edge> pairs;
    for (auto [u, v] : inst.a_c) pairs.insert(canon(u, v));
    for (auto [u, v] : inst.b_c) pairs.insert(canon(u, v));
    target_checked_ = pairs.size();
    const std::size_t size = inst.a_c.size() + inst.b_c.size() + c_members_.size() + 2;
    ceiling_ = 1000 + 100 * size * size;
    shuffle_in_place(a_list_, rng_);
    shuffle_in_place(b_list_, rng_);
  }

  SccrOutcome run() {
    SccrOutcome out;
    for (;;) {
      // Step 1.
      d_init_ = d_;
      code_init_ = code_;
      cause_init_ = cause_;
      avoid_init_ = avoid_;
      a_init_ = a_;
      if (attempt_ == n_attempts_) {
        out.attempts = attempt_;
        out.reason = "no valid construction within " + std::to_string(n_attempts_) + " attempts";
        return out;
      }
      ++attempt_;
      first_edge_ = true;
      rebuild_bookkeeping();
      if (!assign_common_children()) {
        out.attempts = attempt_;
        out.reason = "no common child available for a required pair";
        return out;
      }
      if (a_ == 0) choose_start();
      f_.assign(inst_.n + 1, 0);
      r_ = 0;
      r_compare_ = d_.size();
      iterations_ = 0;
      const Step step = main_loop();
      if (step == Step::failed) {
        out.attempts = attempt_;
        out.reason = failure_;
        return out;
      }
      if (step == Step::restart) continue;

      std::set<Edge> live;
      for (std::size_t k = 0; k < d_.size(); ++k) {
        if (code_[k] != kRemoved) live.insert(d_[k]);
      }
      std::vector<Edge> edges(live.begin(), live.end());
      out.attempts = attempt_;
      if (!is_component(edges)) {
        out.reason = "C is not a strongly connected component of the construction";
        return out;
      }
      out.edges = std::move(edges);
      return out;
    }
  }

 private:
  Edge& D(std::size_t k) { return d_[k - 1]; }
  int& Code(std::size_t k) { return code_[k - 1]; }
  int& Cause(std::size_t k) { return cause_[k - 1]; }

  bool safe(Edge e) const { return is_safe(e, parents_, m_); }
  bool incompatible(Edge x, Edge y) const { return are_incompatible(x, y, m_); }

  void remove_parent(Vertex child, Vertex parent) {
    auto& bag = parents_[child];
    auto it = std::find(bag.begin(), bag.end(), parent);
    if (it != bag.end()) bag.erase(it);
  }
  bool has_parent(Vertex child, Vertex parent) const {
    const auto& bag = parents_[child];
    return std::find(bag.begin(), bag.end(), parent) != bag.end();
  }

  // Returns true when the pair was new.
  bool check(Vertex u, Vertex v) { return checked_.insert(canon(u, v)).second; }

  void push(Edge e, int code, int cause) {
    d_.push_back(e);
    code_.push_back(code);
    cause_.push_back(cause);
  }

  void rebuild_bookkeeping() {
    checked_.clear();
    parents_.assign(inst_.n + 1, {});
    for (std::size_t k = 0; k < d_.size(); ++k) {
      checked_.insert(canon(d_[k].first, d_[k].second));
      if (code_[k] != kRemoved) parents_[d_[k].second].push_back(d_[k].first);
    }
  }

  bool common_child_specified(Edge p) const {
    for (std::size_t k = 0; k < d_.size(); ++k) {
      if (code_[k] != kComCh) continue;
      if ((d_[k].first == p.first && cause_[k] == p.second) || (d_[k].first == p.second && cause_[k] == p.first)) {
        return true;
      }
    }
    return false;
  }

  bool avoided(Edge e) const { return avoid_ && *avoid_ == e; }

  bool assign_common_children() {
    const auto twos = static_cast<std::size_t>(std::count(code_.begin(), code_.end(), static_cast<int>(kComCh)));
    if (twos >= 2 * com_pairs_.size()) return true;
    for (Edge p : com_pairs_) {
      if (common_child_specified(p)) continue;
      const auto [p1, p2] = p;
      auto order = c_members_;
      shuffle_in_place(order, rng_);
      Vertex found = 0;
      for (Vertex v : order) {
        if (!m_.in_b(p1, v) || !m_.in_b(p2, v)) continue;
        if (avoided({p1, v}) || avoided({p2, v})) continue;
        if (!safe({p1, v}) || !safe({p2, v})) continue;
        found = v;
        break;
      }
      if (found == 0) return false;
      push({p1, found}, kComCh, p2);
      push({p2, found}, kComCh, p1);
      parents_[found].push_back(p1);
      parents_[found].push_back(p2);
      check(p1, found);
      check(p2, found);
    }
    return true;
  }

  void choose_start() {
    int best = std::numeric_limits<int>::max();
    std::vector<Vertex> ties;
    for (Vertex v : c_members_) {
      const int degree = set_size(m_.a[v] & inst_.c) + [&] {
        int k = 0;
        for (auto [x, y] : inst_.b_c) k += (y == v) ? 1 : 0;
        return k;
      }();
      if (degree < best) {
        best = degree;
        ties.clear();
      }
      if (degree == best) ties.push_back(v);
    }
    a_ = ties[uniform_index(rng_, ties.size())];
  }

  bool loop_condition() const {
    if (checked_.size() != target_checked_) return true;
    if (c_members_.size() == 2 && !inst_.a_c.empty()) {
      const Vertex v1 = c_members_[0];
      const Vertex v2 = c_members_[1];
      bool fwd = false;
      bool bwd = false;
      for (std::size_t k = 0; k < d_.size(); ++k) {
        if (code_[k] == kRemoved) continue;
        if (d_[k] == Edge{v1, v2}) fwd = true;
        if (d_[k] == Edge{v2, v1}) bwd = true;
      }
      return !(fwd && bwd);
    }
    return false;
  }

  void restore_initial() {
    shuffle_in_place(a_list_, rng_);
    shuffle_in_place(b_list_, rng_);
    d_ = d_init_;
    code_ = code_init_;
    cause_ = cause_init_;
    a_ = a_init_;
    avoid_ = avoid_init_;
  }

  bool tick() { return ++iterations_ <= ceiling_; }

  Step main_loop() {
    while (loop_condition()) {
      if (r_ > r_compare_ || !tick()) {
        restore_initial();
        return Step::restart;
      }
      std::vector<Vertex> s;
      auto offer = [&](Vertex b) {
        if (std::find(s.begin(), s.end(), b) == s.end()) s.push_back(b);
      };
      for (auto [x, y] : a_list_) {
        if (x == a_ && !(first_edge_ && avoided({a_, y}))) offer(y);
      }
      for (auto [x, y] : b_list_) {
        if (y == a_ && !(first_edge_ && avoided({x, a_}))) offer(x);
      }
      if (s.empty()) {
        failure_ = "no candidate edge at vertex " + std::to_string(a_);
        return Step::failed;
      }
      Vertex b = 0;
      for (Vertex x : s) {
        if (!checked_.count(canon(a_, x))) {
          b = x;
          break;
        }
      }
      if (b == 0) {
        ++f_[a_];
        b = s[static_cast<std::size_t>(f_[a_] - 1) % s.size()];
      }
      cause_num_ = static_cast<int>(d_.size()) + 1;
      Vertex c = b;
      Vertex d = a_;
      if (m_.in_c(a_) && m_.in_c(b)) {
        c = a_;
        d = b;
      }
      push({c, d}, kEcho, cause_num_);
      parents_[d].push_back(c);
      if (!check(c, d)) {
        ++r_;
      } else {
        r_ = 0;
        r_compare_ = d_.size();
      }
      if (safe({c, d})) {
        a_ = d;
        first_edge_ = false;
        continue;
      }
      const Step step = correct();
      if (step != Step::done) return step;
      const Step post = potential_problems();
      if (post != Step::done) return post;
      first_edge_ = false;
    }
    return Step::done;
  }

  // Finds v in C, in random order, meeting `ok`.
  template <class Pred>
  Vertex find_in_c(Pred ok) {
    auto order = c_members_;
    shuffle_in_place(order, rng_);
    for (Vertex v : order) {
      if (ok(v)) return v;
    }
    return 0;
  }

  // Highest index in `s` whose code is not kRemoved, or 0.
  std::size_t highest_live(const std::vector<std::size_t>& s) {
    std::size_t best = 0;
    for (std::size_t k : s) {
      if (Code(k) != kRemoved) best = std::max(best, k);
    }
    return best;
  }

  // The removal/flip loop for the unsafe edge just appended.
  Step correct() {
    std::size_t i = d_.size();
    potential_.clear();
    std::size_t r_vertex = 0;
    std::size_t r_vertex_compare = std::numeric_limits<std::size_t>::max();
    for (;;) {
      if (r_vertex > r_vertex_compare) {
        failure_ = "correction kept revisiting the same vertex";
        return Step::failed;
      }
      if (!tick()) {
        restore_initial();
        return Step::restart;
      }
      const Edge e = D(i);
      const auto [e1, e2] = e;
      if (m_.in_c(e1)) {
        const Vertex v = find_in_c([&](Vertex x) {
          return m_.in_a(e1, x) && m_.in_a(e2, x) && safe({e1, x}) && safe({e2, x}) &&
                 !(first_edge_ && (avoided({e1, x}) || avoided({e2, x})));
        });
        if (v != 0) {
          D(i) = {e2, e1};
          Code(i) = kRemoved;
          Cause(i) = cause_num_;
          push({e1, v}, kPreserve, cause_num_);
          push({e2, v}, kPreserve, cause_num_);
          remove_parent(e2, e1);
          parents_[v].push_back(e1);
          parents_[v].push_back(e2);
          if (check(e1, v)) r_ = 0;
          if (check(e2, v)) r_ = 0;
          a_ = v;
          return Step::done;
        }
        D(i) = {e2, e1};
        Code(i) = kFlipped;
        Cause(i) = cause_num_;
        parents_[e1].push_back(e2);
        remove_parent(e2, e1);
        if (safe({e2, e1})) {
          a_ = e1;
          return Step::done;
        }
        std::vector<std::size_t> s;
        for (std::size_t k = 1; k <= d_.size(); ++k) {
          if (D(k).second == e1 && has_parent(e1, D(k).first) && incompatible(D(k), {e2, e1})) s.push_back(k);
        }
        std::size_t kmax = 0;
        for (std::size_t k : s) {
          if (Code(k) == kFlipped || Code(k) == kPreserve) kmax = std::max(kmax, k);
        }
        if (kmax != 0) {
          std::size_t j = 1;
          while (D(j) != D(kmax)) ++j;
          jump_back(j);
          return Step::restart;
        }
        potential_.push_back({e2, e1});
        i = highest_live(s);
        if (i == 0) {
          restore_initial();
          return Step::restart;
        }
        r_vertex = 0;
        continue;
      }

      const Vertex v = find_in_c([&](Vertex x) {
        return m_.in_b(e1, x) && m_.in_a(e2, x) && safe({e1, x}) && safe({e2, x}) &&
               !(first_edge_ && (avoided({e1, x}) || avoided({e2, x})));
      });
      bool relocated = false;
      if (v != 0) {
        if (Code(i) != kComCh) {
          D(i) = {e2, e1};
          Code(i) = kRemoved;
          Cause(i) = cause_num_;
        }
        push({e1, v}, kPreserve, cause_num_);
        push({e2, v}, kPreserve, cause_num_);
        remove_parent(e2, e1);
        parents_[v].push_back(e1);
        parents_[v].push_back(e2);
        if (check(e1, v)) {
          r_ = 0;
          r_compare_ = d_.size();
        }
        if (check(e2, v)) {
          r_ = 0;
          r_compare_ = d_.size();
        }
        std::vector<std::size_t> twos;
        for (std::size_t k = 1; k <= d_.size(); ++k) {
          if (D(k) == e && Code(k) == kComCh) twos.push_back(k);
        }
        relocated = true;
        for (std::size_t k : twos) {
          const Vertex partner = static_cast<Vertex>(Cause(k));
          const Vertex w = find_in_c([&](Vertex x) {
            return m_.in_b(e1, x) && m_.in_b(partner, x) && safe({e1, x}) && safe({partner, x});
          });
          if (w == 0) {
            relocated = false;
            break;
          }
          D(k) = {e1, w};
          const std::size_t other = (k % 2 == 1) ? k + 1 : k - 1;
          D(other) = {partner, w};
          parents_[w].push_back(e1);
          parents_[w].push_back(partner);
          remove_parent(e2, e1);
          remove_parent(e2, partner);
          if (check(e1, w)) {
            r_ = 0;
            r_compare_ = d_.size();
          }
          if (check(partner, w)) {
            r_ = 0;
            r_compare_ = d_.size();
          }
        }
        if (relocated) {
          a_ = v;
          return Step::done;
        }
      }

      // The incoming edge could not be deleted.
      std::vector<std::size_t> s;
      for (std::size_t k = 1; k <= d_.size(); ++k) {
        if (D(k).second == e2 && has_parent(e2, D(k).first) && incompatible(D(k), e)) s.push_back(k);
      }
      std::vector<std::size_t> hot;
      for (std::size_t k : s) {
        if (Code(k) == kFlipped || Code(k) == kPreserve) hot.push_back(k);
      }
      if (!hot.empty()) {
        jump_back(hot[uniform_index(rng_, hot.size())]);
        return Step::restart;
      }
      potential_.push_back(e);
      i = highest_live(s);
      if (i == 0) {
        restore_initial();
        return Step::restart;
      }
      if (r_vertex == 0) {
        r_vertex_compare = static_cast<std::size_t>(
            std::count_if(d_.begin(), d_.end(), [&](const Edge& x) { return x.second == e2; }));
      }
      ++r_vertex;
    }
  }

  Step potential_problems() {
    for (Edge e : potential_) {
      if (safe(e)) continue;
      std::vector<Vertex> s;
      for (Vertex v : parents_[e.second]) {
        if (incompatible({v, e.second}, e) && std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
      }
      if (s.empty()) continue;
      const Vertex v = s[uniform_index(rng_, s.size())];
      std::size_t j = 0;
      for (std::size_t k = 1; k <= d_.size(); ++k) {
        if (D(k) == Edge{v, e.second} && Code(k) != kRemoved) {
          j = k;
          break;
        }
      }
      if (j == 0) {
        restore_initial();
        return Step::restart;
      }
      jump_back(j);
      return Step::restart;
    }
    return Step::done;
  }

  // The jump-back subroutine; leaves the state ready for step 1.
  void jump_back(std::size_t j) {
    avoid_ = D(j);
    if (Code(j) == kComCh) {
      const std::size_t limit = std::min(2 * com_pairs_.size(), d_.size());
      std::vector<std::size_t> keep;
      const std::size_t skip_from = (j % 2 == 1) ? j : j - 1;
      for (std::size_t k = 1; k <= limit; ++k) {
        if (k != skip_from && k != skip_from + 1) keep.push_back(k);
      }
      std::vector<Edge> d;
      std::vector<int> code;
      std::vector<int> cause;
      for (std::size_t k : keep) {
        d.push_back(D(k));
        code.push_back(Code(k));
        cause.push_back(Cause(k));
      }
      shuffle_in_place(a_list_, rng_);
      shuffle_in_place(b_list_, rng_);
      d_ = std::move(d);
      code_ = std::move(code);
      cause_ = std::move(cause);
      a_ = 0;
      return;
    }
    const auto jj = static_cast<std::size_t>(Cause(j));
    std::vector<Edge> d(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(jj - 1));
    std::vector<int> code(code_.begin(), code_.begin() + static_cast<std::ptrdiff_t>(jj - 1));
    std::vector<int> cause(cause_.begin(), cause_.begin() + static_cast<std::ptrdiff_t>(jj - 1));
    for (std::size_t k = 1; k + 1 <= jj; ++k) {
      if ((code[k - 1] == kFlipped || code[k - 1] == kRemoved) && static_cast<std::size_t>(cause[k - 1]) >= jj) {
        d[k - 1] = flip(d[k - 1]);
        code[k - 1] = kEcho;
        cause[k - 1] = static_cast<int>(k);
      }
    }
    const Edge at = D(jj);
    const bool undone = Code(jj) == kFlipped || Code(jj) == kRemoved;
    if (undone && m_.in_a(at.first, at.second)) {
      a_ = at.second;
    } else if (undone) {
      a_ = at.first;
    } else if (m_.in_a(at.first, at.second)) {
      a_ = at.first;
    } else {
      a_ = at.second;
    }
    shuffle_in_place(a_list_, rng_);
    shuffle_in_place(b_list_, rng_);
    d_ = std::move(d);
    code_ = std::move(code);
    cause_ = std::move(cause);
  }

  bool is_component(const std::vector<Edge>& edges) const {
    DirectedGraph g(inst_.n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    for (VertexSet comp : scc(g)) {
      if (comp == inst_.c) return true;
    }
    return false;
  }

  const SccrInstance& inst_;
  InstanceMasks m_;
  int n_attempts_;
  Rng rng_;

  std::vector<Edge> a_list_;
  std::vector<Edge> b_list_;
  std::vector<Edge> com_pairs_;
  std::vector<Vertex> c_members_;
  std::size_t target_checked_ = 0;
  std::size_t ceiling_ = 0;
  std::size_t iterations_ = 0;

  std::vector<Edge> d_;
  std::vector<int> code_;
  std::vector<int> cause_;
  std::vector<Edge> d_init_;
  std::vector<int> code_init_;
  std::vector<int> cause_init_;
  std::optional<Edge> avoid_;
  std::optional<Edge> avoid_init_;
  Vertex a_ = 0;
  Vertex a_init_ = 0;

  int attempt_ = 0;
  bool first_edge_ = true;
  std::set<Edge> checked_;
  ParentBag parents_;
  std::vector<int> f_;
  std::size_t r_ = 0;
  std::size_t r_compare_ = 0;
  int cause_num_ = 0;
  std::vector<Edge> potential_;
  std::string failure_;
};

}  // namespace

SccrOutcome construct_correct(const SccrInstance& raw, int n_attempts, std::uint64_t seed) {
  if (n_attempts < 1) throw std::invalid_argument("construct_correct needs a positive attempt bound");
  const SccrInstance inst = normalized(raw);
  auto problems = check_instance(inst);
  if (!problems.empty()) throw std::invalid_argument("invalid SCCR instance: " + problems.front());
  return Construction(inst, n_attempts, seed).run();
}

SccrOutcome construct_correct_runs(const SccrInstance& inst, int n_attempts, int runs, std::uint64_t seed) {
  SccrOutcome last;
  int used = 0;
  for (int r = 0; r < runs; ++r) {
    last = construct_correct(inst, n_attempts, derive_seed(seed, "run", static_cast<std::uint64_t>(r)));
    used += last.attempts;
    if (last.edges) break;
  }
  last.attempts = used;
  return last;
}

}  // namespace cycdisc
