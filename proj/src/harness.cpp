#include "cycdisc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "cycdisc/builder.hpp"
#include "cycdisc/dsep.hpp"
#include "cycdisc/errors.hpp"
#include "cycdisc/mec.hpp"
#include "cycdisc/rng.hpp"
#include "cycdisc/sccr.hpp"
#include "cycdisc/score.hpp"
#include "cycdisc/search.hpp"
#include "json.hpp"

namespace cycdisc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// SCCR experiment: every block of the true decomposition must be solved in the
// same whole-graph attempt, and each output must pass validate_output.
TrialResult sccr_trial(const ExperimentSpec& spec, const DirectedGraph& g, std::uint64_t seed) {
  TrialResult t;
  const CiOracle ci = enumerate_ci(g);
  const auto instances = derive_instances(ci, induced_partition(g));
  const auto start = Clock::now();
  const int attempts = spec.algorithm == Algorithm::sccr_flow ? 1 : spec.sccr_attempts;
  std::string last;
  for (int r = 0; r < attempts; ++r) {
    bool all = true;
    for (std::size_t k = 0; k < instances.size() && all; ++k) {
      const SccrInstance& inst = instances[k];
      SccrOutcome res = spec.algorithm == Algorithm::sccr_flow
                            ? solve_flow(inst)
                            : construct_correct(inst, spec.sccr_bound, derive_seed(seed, "attempt", r * 1000 + k));
      if (!res.edges) {
        last = "block " + format_set(inst.c) + ": " + res.reason;
        all = false;
      } else if (auto v = validate_output(*res.edges, inst); !v.ok) {
        last = "block " + format_set(inst.c) + " output invalid: " + v.violations.front();
        all = false;
      }
    }
    if (all) {
      t.success = true;
      break;
    }
  }
  t.millis = elapsed_ms(start);
  if (!t.success) t.reason = last;
  return t;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::mec:
      return "mec";
    case Algorithm::sccr_cc:
      return "sccr-cc";
    case Algorithm::sccr_flow:
      return "sccr-flow";
    case Algorithm::end2end:
      return "end2end";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::mec, Algorithm::sccr_cc, Algorithm::sccr_flow, Algorithm::end2end}) {
    if (algorithm_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm \"" + std::string(name) + "\"");
}

DirectedGraph gen_er_graph(int n, double p, std::uint64_t seed) {
  if (n < 1 || n > kMaxVertices) throw std::invalid_argument("vertex count out of range");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  Rng rng = make_rng(seed, "er-graph");
  DirectedGraph g(n);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = 1; v <= n; ++v) {
      if (u != v && bernoulli(rng, p)) g.add_edge(u, v);
    }
  }
  return g;
}

int default_plateau(int n) {
  if (n <= 8) return 30;
  if (n == 9) return 40;
  return 50;
}

std::size_t ExperimentReport::successes() const {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return t.success; }));
}

double ExperimentReport::success_rate() const {
  return trials.empty() ? 0.0 : static_cast<double>(successes()) / static_cast<double>(trials.size());
}

TrialResult run_trial(const ExperimentSpec& spec, int index) {
  const std::uint64_t seed = derive_seed(spec.seed, "trial", static_cast<std::uint64_t>(index));
  TrialResult t;
  try {
    const DirectedGraph g = gen_er_graph(spec.n, spec.p, derive_seed(seed, "graph"));
    if (spec.algorithm == Algorithm::sccr_cc || spec.algorithm == Algorithm::sccr_flow) {
      t = sccr_trial(spec, g, seed);
      t.seed = seed;
      return t;
    }
    const CiOracle ci = enumerate_ci(g);
    SearchConfig cfg;
    cfg.n_plateau = spec.n_plateau > 0 ? spec.n_plateau : default_plateau(spec.n);
    cfg.seed = derive_seed(seed, "search");
    const auto start = Clock::now();
    const SearchResult found = greedy_discover(ci, cfg);
    if (spec.algorithm == Algorithm::mec) {
      t.millis = elapsed_ms(start);
      t.success = compute_sets(ci, found.best) == graph_summary(g);
      if (!t.success) t.reason = "score " + format_score(found.best_score) + " at " + describe(found.best);
    } else {
      BuildLimits limits;
      limits.max_partitions = spec.max_partitions;
      limits.runs = spec.end2end_runs;
      limits.cc_attempts = spec.sccr_bound;
      limits.seed = derive_seed(seed, "build");
      const BuildResult built = build_graph(ci, found, SolverKind::construct_correct, limits);
      t.millis = elapsed_ms(start);
      if (!built.graph) {
        t.reason = "no graph after " + std::to_string(built.partitions_tried) + " partitions tried and " +
                   std::to_string(built.partitions_screened) + " screened";
        if (!built.failures.empty()) t.reason += "; last: " + built.failures.back().reason;
      } else {
        t.success = enumerate_ci(*built.graph) == ci;
        if (!t.success) t.reason = "output entails a different CI set";
      }
    }
  } catch (const GuardError& e) {
    t.success = false;
    t.reason = std::string("guard: ") + e.what();
  }
  t.seed = seed;
  return t;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  ExperimentReport r;
  r.spec = spec;
  for (int i = 0; i < spec.trials; ++i) r.trials.push_back(run_trial(spec, i));
  return r;
}

std::string report_csv(const ExperimentReport& r, bool timing) {
  std::string out = "seed,n,p,algorithm,outcome,millis,reason\n";
  for (const auto& t : r.trials) {
    out += std::to_string(t.seed) + "," + std::to_string(r.spec.n) + "," + fixed(r.spec.p, 2) + "," +
           std::string(algorithm_name(r.spec.algorithm)) + "," + (t.success ? "success" : "failure") + "," +
           (timing ? fixed(t.millis, 3) : "") + "," + csv_field(t.reason) + "\n";
  }
  return out;
}

std::string report_json(const ExperimentReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["algorithm"] = algorithm_name(r.spec.algorithm);
  j["n"] = r.spec.n;
  j["p"] = r.spec.p;
  j["seed"] = r.spec.seed;
  j["trials"] = r.trials.size();
  j["successes"] = r.successes();
  j["success_rate"] = r.success_rate();
  if (timing && !r.trials.empty()) {
    std::vector<double> ms;
    for (const auto& t : r.trials) ms.push_back(t.millis);
    std::sort(ms.begin(), ms.end());
    double sum = 0.0;
    for (double v : ms) sum += v;
    j["millis"] = {{"min", ms.front()},
                   {"median", ms[ms.size() / 2]},
                   {"mean", sum / static_cast<double>(ms.size())},
                   {"max", ms.back()}};
  }
  std::map<std::string, int> reasons;
  for (const auto& t : r.trials) {
    if (!t.success) ++reasons[t.reason.substr(0, t.reason.find(':'))];
  }
  j["failure_reasons"] = reasons;
  return j.dump(2) + "\n";
}

}  // namespace cycdisc
