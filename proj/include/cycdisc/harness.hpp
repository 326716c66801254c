#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cycdisc/graph.hpp"

namespace cycdisc {

enum class Algorithm { mec, sccr_cc, sccr_flow, end2end };

std::string_view algorithm_name(Algorithm a);
// Accepts the names printed by algorithm_name; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view name);

// Every ordered pair (u,v), u != v, is an edge with probability p.
DirectedGraph gen_er_graph(int n, double p, std::uint64_t seed);

struct ExperimentSpec {
  int n = 7;
  double p = 0.2;
  int trials = 30;
  Algorithm algorithm = Algorithm::mec;
  std::uint64_t seed = 0;
  int n_plateau = 0;              // 0 picks default_plateau(n)
  int sccr_bound = 100;           // attempt bound inside one construct-and-correct run
  int sccr_attempts = 20;         // whole-graph attempts in the SCCR experiment
  std::size_t max_partitions = 300;
  int end2end_runs = 1;           // construct-and-correct runs per block and partition
};

// 30 for n <= 8, then 40 for n = 9 and 50 for n >= 10.
int default_plateau(int n);

struct TrialResult {
  std::uint64_t seed = 0;
  bool success = false;
  double millis = 0.0;  // algorithm time only, CI enumeration excluded
  std::string reason;   // empty on success
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<TrialResult> trials;
  std::size_t successes() const;
  double success_rate() const;
};

// Runs trial `index` of `spec`; guard violations become failed trials.
TrialResult run_trial(const ExperimentSpec& spec, int index);
ExperimentReport run_experiment(const ExperimentSpec& spec);

// One header line, then seed,n,p,algorithm,outcome,millis,reason per trial.
// Without timing the millis column is left empty so reports compare byte for byte.
std::string report_csv(const ExperimentReport& r, bool timing = true);
// Aggregate: counts, success rate, time distribution and failure reasons.
std::string report_json(const ExperimentReport& r, bool timing = true);

}  // namespace cycdisc
