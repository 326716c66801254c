#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cycdisc/dsep.hpp"
#include "cycdisc/graph.hpp"
#include "cycdisc/partition.hpp"
#include "cycdisc/sccr.hpp"
#include "cycdisc/score.hpp"
#include "cycdisc/search.hpp"

namespace cycdisc {

enum class SolverKind { construct_correct, flow };

struct BuildLimits {
  std::size_t max_partitions = 300;   // partitions handed to the solvers
  std::size_t max_explored = 50000;   // fresh equal-score partitions generated
  int runs = 20;           // construct-and-correct runs per block
  int cc_attempts = 100;   // attempt bound inside one construct-and-correct run
  int flow_guard = kFlowGuard;
  std::uint64_t seed = 0;
  ScoreOptions score;
};

struct PartitionFailure {
  OrderedPartition partition;
  std::string reason;
};

struct BuildResult {
  std::optional<DirectedGraph> graph;
  std::optional<OrderedPartition> partition;  // the partition the graph realises
  std::size_t partitions_tried = 0;
  std::size_t partitions_screened = 0;                // rejected by partition_infeasibility
  std::map<std::string, std::size_t> screening_reasons;  // first word of the reason -> count
  std::vector<PartitionFailure> failures;             // one per partition tried
};

// Why a partition cannot be realised: a dependent pair in incomparable blocks,
// a consecutive pair of blocks with no dependent pair across it, a block whose
// inner dependent pairs leave it disconnected, or derived common-child
// requirements that contradict each other. Empty when feasible.
std::optional<std::string> partition_infeasibility(const CiOracle& ci, const OrderedPartition& p);
bool check_partition_feasible(const CiOracle& ci, const OrderedPartition& p);

// Block indices in the lexicographically smallest order compatible with p.
std::vector<int> linear_extension(const OrderedPartition& p);

// One instance per block, in linear_extension order.
std::vector<SccrInstance> derive_instances(const CiOracle& ci, const OrderedPartition& p);

// Realises a graph for one partition, or returns the reason it could not.
struct PartitionAttempt {
  std::optional<DirectedGraph> graph;
  std::string reason;
};
PartitionAttempt build_for_partition(const CiOracle& ci, const OrderedPartition& p, SolverKind solver,
                                     const BuildLimits& limits, std::uint64_t seed);

// Tries the plateau partitions of `search` in order, then fresh equal-score
// partitions nearest the best one first, until one yields a verified graph or
// max_partitions have been tried. Partitions that fail
// partition_infeasibility are skipped without counting as tried.
BuildResult build_graph(const CiOracle& ci, const SearchResult& search, SolverKind solver, const BuildLimits& limits);

}  // namespace cycdisc
