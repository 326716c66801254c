#include "cycdisc/builder.hpp"

#include <algorithm>
#include <set>

#include "cycdisc/errors.hpp"
#include "cycdisc/mec.hpp"
#include "cycdisc/poset.hpp"
#include "cycdisc/sccr_flow.hpp"

namespace cycdisc {

namespace {

struct Derivation {
  std::vector<int> order;
  std::vector<SccrInstance> instances;
  std::optional<std::string> problem;
};

bool has_triple(const std::set<Triple>& s, Vertex a, Vertex b, Vertex c) { return s.count(Triple{a, b, c}) != 0; }

// Whether the pairs of a_c connect every vertex of C.
bool linked_inside(const SccrInstance& inst) {
  VertexSet reached = bit(lowest(inst.c));
  for (bool grew = true; grew;) {
    grew = false;
    for (auto [a, b] : inst.a_c) {
      if (contains(reached, a) && !contains(reached, b)) {
        reached |= bit(b);
        grew = true;
      }
    }
  }
  return reached == inst.c;
}

Derivation derive(const CiOracle& ci, const OrderedPartition& p) {
  Derivation out;
  const int n = p.n();
  const MecSummary sum = compute_sets(ci, p);
  auto e1 = [&](Vertex a, Vertex b) { return sum.e1.count({a, b}) != 0; };
  auto blk = [&](Vertex v) { return p.block_of(v); };
  auto fail = [&](std::string msg) {
    if (!out.problem) out.problem = std::move(msg);
  };

  for (auto [a, b] : sum.e1) {
    if (a < b && !p.leq(blk(a), blk(b)) && !p.leq(blk(b), blk(a))) {
      fail("dependent pair (" + std::to_string(a) + "," + std::to_string(b) + ") lies in incomparable blocks");
    }
  }
  for (auto [i, j] : consecutive_pairs(p)) {
    bool linked = false;
    for_each_vertex(p.block(i), [&](Vertex a) {
      for_each_vertex(p.block(j), [&](Vertex b) { linked = linked || e1(a, b); });
    });
    if (!linked) fail("no dependent pair between consecutive blocks " + format_set(p.block(i)) + " < " + format_set(p.block(j)));
  }

  out.order = linear_extension(p);
  for (int i : out.order) {
    SccrInstance inst;
    inst.n = n;
    inst.c = p.block(i);
    for (auto [a, b] : sum.e1) {
      if (!contains(inst.c, b)) continue;
      if (contains(inst.c, a)) {
        inst.a_c.emplace_back(a, b);
      } else if (p.less(blk(a), i)) {
        inst.b_c.emplace_back(a, b);
      }
    }
    std::set<Edge> com;
    std::set<Edge> no_com;
    for (const Triple& t : sum.e3) {
      const auto [a, b, c] = t;
      if (blk(b) != i || a > c) continue;
      bool minimal = true;
      for (Vertex b2 = 1; b2 <= n && minimal; ++b2) {
        if (p.less(blk(b2), i) && has_triple(sum.e3, a, b2, c)) minimal = false;
      }
      if (!minimal) continue;
      if (contains(inst.c, a) || contains(inst.c, c)) {
        fail("pair (" + std::to_string(a) + "," + std::to_string(c) + ") needs a common child in its own block");
        continue;
      }
      com.insert({a, c});
    }
    for_each_vertex(inst.c, [&](Vertex b) {
      for (Vertex a = 1; a <= n; ++a) {
        for (Vertex c = a + 1; c <= n; ++c) {
          if (!e1(a, b) || !e1(c, b) || e1(a, c)) continue;
          if (p.leq(i, blk(a)) || p.leq(i, blk(c))) continue;
          if (has_triple(sum.e3, a, b, c)) continue;
          no_com.insert({a, c});
        }
      }
    });
    for (Edge e : com) {
      if (no_com.count(e)) {
        fail("pair (" + std::to_string(e.first) + "," + std::to_string(e.second) +
             ") both needs and must not have a common child in " + format_set(inst.c));
      }
    }
    if (set_size(inst.c) > 1 && !linked_inside(inst)) {
      fail("block " + format_set(inst.c) + " is not connected by dependent pairs");
    }
    inst.com_ch.assign(com.begin(), com.end());
    inst.no_com_ch.assign(no_com.begin(), no_com.end());
    out.instances.push_back(normalized(std::move(inst)));
  }
  return out;
}

// The checks a realised graph must pass before it is returned.
std::optional<std::string> verify(const DirectedGraph& g, const CiOracle& ci, const OrderedPartition& p,
                                  const ScoreOptions& opts) {
  if (induced_partition(g) != p) return "graph induces a different partition";
  if (graph_summary(g, opts) != compute_sets(ci, p, opts)) return "graph features differ from the partition's sets";
  if (g.n() <= kCiGuard && enumerate_ci(g) != ci) return "graph entails a different CI set";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> partition_infeasibility(const CiOracle& ci, const OrderedPartition& p) {
  return derive(ci, p).problem;
}

bool check_partition_feasible(const CiOracle& ci, const OrderedPartition& p) {
  return !partition_infeasibility(ci, p).has_value();
}

std::vector<int> linear_extension(const OrderedPartition& p) {
  const int k = p.block_count();
  std::vector<int> out;
  BlockSet placed = 0;
  while (static_cast<int>(out.size()) < k) {
    for (int i = 0; i < k; ++i) {
      if (((placed >> i) & 1U) == 0 && (p.predecessors(i) & ~placed) == 0) {
        out.push_back(i);
        placed |= BlockSet{1} << i;
        break;
      }
    }
  }
  return out;
}

std::vector<SccrInstance> derive_instances(const CiOracle& ci, const OrderedPartition& p) {
  return derive(ci, p).instances;
}

PartitionAttempt build_for_partition(const CiOracle& ci, const OrderedPartition& p, SolverKind solver,
                                     const BuildLimits& limits, std::uint64_t seed) {
  PartitionAttempt out;
  const Derivation d = derive(ci, p);
  if (d.problem) {
    out.reason = *d.problem;
    return out;
  }
  DirectedGraph g(p.n());
  for (std::size_t k = 0; k < d.instances.size(); ++k) {
    const SccrInstance& inst = d.instances[k];
    SccrOutcome res;
    if (solver == SolverKind::flow) {
      try {
        res = solve_flow(inst, limits.flow_guard);
      } catch (const GuardError& e) {
        out.reason = e.what();
        return out;
      }
    } else {
      res = construct_correct_runs(inst, limits.cc_attempts, limits.runs, derive_seed(seed, "block", k));
    }
    if (!res.edges) {
      out.reason = "block " + format_set(inst.c) + ": " + res.reason;
      return out;
    }
    for (auto [u, v] : *res.edges) g.add_edge(u, v);
  }
  if (auto bad = verify(g, ci, p, limits.score)) {
    out.reason = *bad;
    return out;
  }
  out.graph = std::move(g);
  return out;
}

BuildResult build_graph(const CiOracle& ci, const SearchResult& search, SolverKind solver, const BuildLimits& limits) {
  BuildResult out;
  std::vector<OrderedPartition> queue(search.plateau.begin(), search.plateau.end());
  if (queue.empty()) queue.push_back(search.best);
  bool extended = false;
  for (std::size_t k = 0; out.partitions_tried < limits.max_partitions; ++k) {
    if (k == queue.size()) {
      if (extended) break;
      extended = true;
      auto more = more_plateau(ci, search, limits.max_explored, derive_seed(limits.seed, "more-plateau", 0), limits.score);
      if (more.empty()) break;
      queue.insert(queue.end(), more.begin(), more.end());
    }
    const OrderedPartition& p = queue[k];
    if (auto problem = partition_infeasibility(ci, p)) {
      ++out.partitions_screened;
      ++out.screening_reasons[problem->substr(0, problem->find(' '))];
      continue;
    }
    const std::uint64_t seed = derive_seed(limits.seed, "partition", out.partitions_tried);
    ++out.partitions_tried;
    PartitionAttempt attempt = build_for_partition(ci, p, solver, limits, seed);
    if (attempt.graph) {
      out.graph = std::move(attempt.graph);
      out.partition = p;
      return out;
    }
    out.failures.push_back({p, attempt.reason});
  }
  return out;
}

}  // namespace cycdisc
