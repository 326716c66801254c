#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cycdisc/dsep.hpp"
#include "cycdisc/partition.hpp"
#include "cycdisc/rng.hpp"
#include "cycdisc/score.hpp"

namespace cycdisc {

struct SearchConfig {
  int n_plateau = 30;                          // stop a DFS once its path holds this many equal-score steps
  std::vector<OrderedPartition> initial;       // one restart per entry; empty means the three defaults
  std::uint64_t seed = 0;
  bool unbounded = false;                      // plain exhaustive DFS, only allowed for n <= kUnboundedGuard
  std::size_t plateau_log_limit = 5000;
  ScoreOptions score;
};

inline constexpr int kUnboundedGuard = 5;

struct SearchStats {
  std::size_t evaluations = 0;
  std::size_t expansions = 0;
  std::size_t descents = 0;
};

struct SearchResult {
  OrderedPartition best;
  ScoreVector best_score;
  std::vector<OrderedPartition> plateau;  // equal-score partitions, best first, discovery order
  std::vector<ScoreVector> restart_scores;
  SearchStats stats;
};

// One block; {1..floor(n/2)} below {floor(n/2)+1..n}; all singletons unordered.
std::vector<OrderedPartition> default_initial_partitions(int n);

// Caches scores per partition for one CI set.
class ScoreCache {
 public:
  ScoreCache(const CiOracle& ci, ScoreOptions opts) : ci_(ci), opts_(opts) {}
  const ScoreVector& get(const OrderedPartition& p);
  const CiOracle& ci() const { return ci_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  const CiOracle& ci_;
  ScoreOptions opts_;
  std::unordered_map<OrderedPartition, ScoreVector, PartitionHash> cache_;
  std::size_t evaluations_ = 0;
};

struct DfsOptions {
  int n_plateau = 30;
  bool unbounded = false;
};

// Depth-first search from `start` over moves that never raise the score. Returns
// the best strictly improving neighbour of the first expanded node that has one,
// or nothing when the search is exhausted or a path of n_plateau equal-score
// steps has been built. Equal-score partitions seen along the way are appended
// to `plateau` when it is non-null.
std::optional<OrderedPartition> dfs_improve(ScoreCache& cache, const OrderedPartition& start, const DfsOptions& opts,
                                            Rng& rng, std::vector<OrderedPartition>* plateau = nullptr,
                                            SearchStats* stats = nullptr);
std::optional<OrderedPartition> dfs_improve(const CiOracle& ci, const OrderedPartition& start,
                                            const DfsOptions& opts = {}, std::uint64_t seed = 0);

SearchResult greedy_discover(const CiOracle& ci, const SearchConfig& cfg);

// Further equal-score partitions reachable from `result.best` through
// equal-score moves, breadth first, excluding those already in result.plateau;
// at most `limit`.
std::vector<OrderedPartition> more_plateau(const CiOracle& ci, const SearchResult& result, std::size_t limit,
                                           std::uint64_t seed, const ScoreOptions& opts = {});

}  // namespace cycdisc
