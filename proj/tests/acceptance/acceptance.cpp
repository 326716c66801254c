// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cycdisc/builder.hpp"
#include "cycdisc/dsep.hpp"
#include "cycdisc/harness.hpp"
#include "cycdisc/mec.hpp"
#include "cycdisc/poset.hpp"
#include "cycdisc/rng.hpp"
#include "cycdisc/sccr_flow.hpp"
#include "cycdisc/score.hpp"
#include "oracles.hpp"

using namespace cycdisc;

namespace {

constexpr std::uint64_t kSeed = 20231;

// Bands around the reference success rates.
constexpr double kMecBand = 0.15;
constexpr double kCcBand = 0.10;
constexpr double kEndToEndBand = 0.15;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CYCDISC_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Graph codes on five vertices that are smallest among their relabellings.
std::vector<std::uint64_t> isomorphism_representatives() {
  constexpr int n = 5;
  int index[n + 1][n + 1] = {};
  int k = 0;
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u != v) index[u][v] = k++;
    }
  }
  std::vector<std::array<int, n + 1>> perms;
  std::array<int, n> base{1, 2, 3, 4, 5};
  do {
    std::array<int, n + 1> p{};
    for (int i = 0; i < n; ++i) p[i + 1] = base[i];
    perms.push_back(p);
  } while (std::next_permutation(base.begin(), base.end()));

  std::vector<std::uint64_t> reps;
  for (std::uint64_t code = 0; code < (1ULL << k); ++code) {
    bool smallest = true;
    for (const auto& p : perms) {
      std::uint64_t image = 0;
      for (int u = 1; u <= n; ++u) {
        for (int v = 1; v <= n; ++v) {
          if (u != v && ((code >> index[u][v]) & 1U)) image |= 1ULL << index[p[u]][p[v]];
        }
      }
      if (image < code) {
        smallest = false;
        break;
      }
    }
    if (smallest) reps.push_back(code);
  }
  return reps;
}

Outcome criterion1() {
  std::vector<DirectedGraph> graphs;
  std::vector<CiOracle> cis;
  for (std::uint64_t code = 0; code < 64; ++code) {
    graphs.push_back(oracle::graph_from_code(3, code));
    cis.push_back(enumerate_ci(graphs.back()));
  }
  int pairs = 0;
  int bad = 0;
  int equivalent = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      ++pairs;
      const bool m = markov_equivalent(graphs[i], graphs[j]);
      if (m != (cis[i] == cis[j])) ++bad;
      equivalent += m ? 1 : 0;
    }
  }
  return {bad == 0, std::to_string(pairs) + " ordered pairs, " + std::to_string(equivalent) + " equivalent, " +
                        std::to_string(bad) + " disagreements"};
}

// Exceptions among the lexicographic minimisers for one graph.
int minimiser_exceptions(const DirectedGraph& g, const std::vector<OrderedPartition>& all) {
  const CiOracle ci = enumerate_ci(g);
  const OrderedPartition truth = induced_partition(g);
  const MecSummary want = compute_sets(ci, truth);
  int bad = want == graph_summary(g) ? 0 : 1;
  std::vector<ScoreVector> scores;
  scores.reserve(all.size());
  for (const auto& p : all) scores.push_back(score_vector(ci, p));
  const ScoreVector best = *std::min_element(scores.begin(), scores.end());
  if (!(score_vector(ci, truth) == best)) ++bad;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (scores[i] == best && !(compute_sets(ci, all[i]) == want)) ++bad;
  }
  return bad;
}

Outcome criterion2() {
  int graphs = 0;
  int bad = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto all = enumerate_all(n);
    for (std::uint64_t code = 0; code < (1ULL << (n * (n - 1))); ++code) {
      bad += minimiser_exceptions(oracle::graph_from_code(n, code), all);
      ++graphs;
    }
  }
  const auto all5 = enumerate_all(5);
  Rng rng = make_rng(kSeed, "criterion2");
  for (int i = 0; i < 100; ++i) {
    const double p = 0.1 + 0.1 * static_cast<double>(uniform_index(rng, 7));
    bad += minimiser_exceptions(gen_er_graph(5, p, derive_seed(kSeed, "criterion2-graph", i)), all5);
    ++graphs;
  }
  return {bad == 0, std::to_string(graphs) + " graphs, " + std::to_string(bad) + " exceptions"};
}

struct Cell {
  int n;
  double p;
  double reference;
};

// Runs one experiment per cell and checks each rate against its band.
Outcome rate_cells(Algorithm algo, const std::vector<Cell>& cells, int trials, double band,
                   const std::function<void(ExperimentSpec&)>& tweak = {}) {
  Outcome o;
  for (const auto& c : cells) {
    ExperimentSpec spec;
    spec.algorithm = algo;
    spec.n = c.n;
    spec.p = c.p;
    spec.trials = trials;
    spec.seed = derive_seed(kSeed, algorithm_name(algo), static_cast<std::uint64_t>(c.n * 100 + std::lround(c.p * 10)));
    if (tweak) tweak(spec);
    const double rate = run_experiment(spec).success_rate();
    const bool ok = std::abs(rate - c.reference) <= band + 1e-9;
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += "n=" + std::to_string(c.n) + " p=" + fmt(c.p) + " rate " + fmt(rate) + " vs " + fmt(c.reference) +
                (ok ? "" : " (out of band)");
  }
  return o;
}

Outcome criterion3() {
  return rate_cells(Algorithm::mec, {{7, 0.2, 0.93}, {7, 0.4, 0.97}, {7, 0.6, 1.0}, {7, 0.8, 1.0}}, 30, kMecBand);
}

Outcome criterion4() {
  const std::vector<Cell> cells{{7, 0.2, 0.98},  {7, 0.4, 1.0},   {7, 0.6, 1.0},   {7, 0.8, 1.0},
                                {8, 0.2, 0.98},  {9, 0.2, 0.99},  {10, 0.2, 0.97}, {7, 0.3, 0.96},
                                {8, 0.3, 0.99},  {9, 0.3, 0.97},  {10, 0.3, 0.98}};
  return rate_cells(Algorithm::sccr_cc, cells, 100, kCcBand, [](ExperimentSpec& s) {
    s.sccr_bound = 100;
    s.sccr_attempts = 20;
  });
}

Outcome criterion5() {
  auto tweak = [](ExperimentSpec& s) {
    s.max_partitions = 300;
    s.end2end_runs = 1;
  };
  Outcome gated = rate_cells(Algorithm::end2end, {{7, 0.4, 0.97}}, 30, kEndToEndBand, tweak);
  ExperimentSpec spec;
  spec.algorithm = Algorithm::end2end;
  spec.n = 7;
  spec.p = 0.2;
  spec.trials = 30;
  spec.seed = derive_seed(kSeed, "end2end-reported");
  tweak(spec);
  gated.detail += "; n=7 p=0.20 rate " + fmt(run_experiment(spec).success_rate()) + " (reported only)";
  return gated;
}

Outcome criterion6() {
  const SccrInstance inst = parse_instance(slurp("nine_vertex.inst"));
  const auto reference = parse_graph(slurp("nine_vertex_solution.graph")).edges();
  const bool reference_ok = reference.size() == 12 && validate_output(reference, inst).ok;
  const auto res = construct_correct_runs(inst, 100, 20, kSeed);
  const bool solved = res.edges && validate_output(*res.edges, inst).ok;
  return {reference_ok && solved, std::string("reference solution ") + (reference_ok ? "valid" : "invalid") +
                                    ", construct-and-correct " +
                                    (solved ? "valid after " + std::to_string(res.attempts) + " attempts" : res.reason)};
}

Outcome criterion7() {
  const auto instances = oracle::random_instances(200, 4, 12, kSeed);
  int disagree = 0;
  int invalid = 0;
  int feasible = 0;
  int cc_solved = 0;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const auto& inst = instances[k];
    const bool brute = oracle::brute_force_sccr(inst).has_value();
    const auto flow = solve_flow(inst);
    if (flow.edges.has_value() != brute) ++disagree;
    if (flow.edges && !validate_output(*flow.edges, inst).ok) ++invalid;
    feasible += brute ? 1 : 0;
    const auto cc = construct_correct(inst, 100, derive_seed(kSeed, "criterion7", k));
    if (cc.edges) {
      ++cc_solved;
      if (!validate_output(*cc.edges, inst).ok) ++invalid;
    }
  }
  return {disagree == 0 && invalid == 0,
          std::to_string(instances.size()) + " instances, " + std::to_string(feasible) + " feasible, " +
              std::to_string(cc_solved) + " solved by construct-and-correct, " + std::to_string(disagree) +
              " feasibility disagreements, " + std::to_string(invalid) + " invalid outputs"};
}

Outcome criterion8() {
  long long checked = 0;
  int bad = 0;
  for (int k = 1; k <= 4; ++k) {
    std::vector<Edge> pairs;
    for (int u = 1; u <= k; ++u) {
      for (int v = u + 1; v <= k; ++v) pairs.emplace_back(u, v);
    }
    for (std::uint64_t keep = 0; keep < (1ULL << pairs.size()); ++keep) {
      std::vector<Edge> free;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if ((keep >> i) & 1U) free.push_back(pairs[i]);
      }
      for (std::uint64_t code = 0; code < (1ULL << free.size()); ++code) {
        std::vector<int> x(free.size());
        std::vector<Edge> flipped;
        for (std::size_t i = 0; i < free.size(); ++i) {
          x[i] = ((code >> i) & 1U) ? -1 : 0;
          flipped.push_back(x[i] == -1 ? Edge{free[i].second, free[i].first} : free[i]);
        }
        const bool strong = oracle::components(DirectedGraph(k, flipped)).size() == 1;
        if (flow_member(free, x, full_set(k)) != strong) ++bad;
        ++checked;
      }
    }
  }
  return {bad == 0, std::to_string(checked) + " assignments, " + std::to_string(bad) + " exceptions"};
}

// Disagreements among the three engines over all pairs and conditioning sets.
int engine_disagreements(const DirectedGraph& g, long long& queries) {
  const int n = g.n();
  int bad = 0;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      const VertexSet rest = full_set(n) & ~bit(a) & ~bit(b);
      for (VertexSet z = rest;; z = (z - 1) & rest) {
        const bool r = d_connected(g, a, b, z);
        if (r != d_connected_moral(g, a, b, z) || r != oracle::d_connected_paths(g, a, b, z)) ++bad;
        ++queries;
        if (z == 0) break;
      }
    }
  }
  return bad;
}

Outcome criterion9() {
  long long queries = 0;
  long long graphs = 0;
  int bad = 0;
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t code = 0; code < (1ULL << (n * (n - 1))); ++code) {
      bad += engine_disagreements(oracle::graph_from_code(n, code), queries);
      ++graphs;
    }
  }
  const auto reps = isomorphism_representatives();
  for (std::uint64_t code : reps) {
    bad += engine_disagreements(oracle::graph_from_code(5, code), queries);
    ++graphs;
  }
  return {bad == 0, std::to_string(graphs) + " graphs (n=5 up to relabelling: " + std::to_string(reps.size()) + "), " +
                        std::to_string(queries) + " queries, " + std::to_string(bad) + " disagreements"};
}

}  // namespace

int main() {
  report("criterion 1 (equivalence oracles agree, n=3)", criterion1);
  report("criterion 2 (minimisers share the true summary)", criterion2);
  report("criterion 3 (greedy search success rates)", criterion3);
  report("criterion 4 (construct-and-correct success rates)", criterion4);
  report("criterion 5 (end-to-end success rate)", criterion5);
  report("criterion 6 (nine-vertex instance golden)", criterion6);
  report("criterion 7 (exhaustive solver vs brute force)", criterion7);
  report("criterion 8 (cut constraints vs strong connectivity)", criterion8);
  report("criterion 9 (three d-separation engines agree)", criterion9);
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures;
}
