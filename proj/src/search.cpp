#include "cycdisc/search.hpp"

#include <deque>
#include <unordered_set>

#include "cycdisc/errors.hpp"
#include "cycdisc/poset.hpp"

namespace cycdisc {

std::vector<OrderedPartition> default_initial_partitions(int n) {
  std::vector<OrderedPartition> out;
  out.emplace_back(n, std::vector<VertexSet>{full_set(n)});
  const int half = n / 2;
  if (half >= 1) {
    const VertexSet low = full_set(half);
    out.emplace_back(n, std::vector<VertexSet>{low, full_set(n) & ~low}, std::vector<std::pair<int, int>>{{0, 1}});
  } else {
    out.emplace_back(n, std::vector<VertexSet>{full_set(n)});
  }
  std::vector<VertexSet> singles;
  for (Vertex v = 1; v <= n; ++v) singles.push_back(bit(v));
  out.emplace_back(n, std::move(singles));
  return out;
}

const ScoreVector& ScoreCache::get(const OrderedPartition& p) {
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;
  ++evaluations_;
  return cache_.emplace(p, score_vector(ci_, p, opts_)).first->second;
}

namespace {

struct Frame {
  std::vector<OrderedPartition> equal;
  std::size_t next = 0;
};

}  // namespace

std::optional<OrderedPartition> dfs_improve(ScoreCache& cache, const OrderedPartition& start, const DfsOptions& opts,
                                            Rng& rng, std::vector<OrderedPartition>* plateau, SearchStats* stats) {
  if (opts.unbounded && start.n() > kUnboundedGuard) {
    throw GuardError("unbounded DFS refuses n=" + std::to_string(start.n()));
  }
  const ScoreVector root = cache.get(start);
  std::unordered_set<OrderedPartition, PartitionHash> visited{start};

  // Scores every unvisited neighbour of p; returns the best strict improvement,
  // otherwise fills `frame` with the equal-score neighbours.
  auto expand = [&](const OrderedPartition& p, Frame& frame) -> std::optional<OrderedPartition> {
    if (stats) ++stats->expansions;
    auto nbrs = neighbors(p);
    shuffle_in_place(nbrs, rng);
    const OrderedPartition* best = nullptr;
    const ScoreVector* best_score = nullptr;
    for (const auto& q : nbrs) {
      if (visited.count(q)) continue;
      const ScoreVector& s = cache.get(q);
      if (s < root) {
        if (!best || s < *best_score) {
          best = &q;
          best_score = &s;
        }
      } else if (s == root) {
        frame.equal.push_back(q);
      }
    }
    if (best) return *best;
    return std::nullopt;
  };

  std::vector<Frame> stack(1);
  if (auto better = expand(start, stack.back())) return better;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next >= top.equal.size()) {
      stack.pop_back();
      continue;
    }
    OrderedPartition q = top.equal[top.next++];
    if (!visited.insert(q).second) continue;
    if (plateau) plateau->push_back(q);
    Frame frame;
    if (auto better = expand(q, frame)) return better;
    const auto depth = static_cast<int>(stack.size());
    if (!opts.unbounded && depth >= opts.n_plateau) return std::nullopt;
    stack.push_back(std::move(frame));
  }
  return std::nullopt;
}

std::optional<OrderedPartition> dfs_improve(const CiOracle& ci, const OrderedPartition& start, const DfsOptions& opts,
                                            std::uint64_t seed) {
  ScoreCache cache(ci, {});
  Rng rng = make_rng(seed, "dfs");
  return dfs_improve(cache, start, opts, rng);
}

SearchResult greedy_discover(const CiOracle& ci, const SearchConfig& cfg) {
  if (cfg.n_plateau < 1) throw std::invalid_argument("n_plateau must be positive");
  const auto initial = cfg.initial.empty() ? default_initial_partitions(ci.n()) : cfg.initial;
  ScoreCache cache(ci, cfg.score);
  SearchResult result;
  const DfsOptions dfs{cfg.n_plateau, cfg.unbounded};

  struct RestartOutcome {
    OrderedPartition final;
    ScoreVector score;
    std::vector<OrderedPartition> plateau;
  };
  std::vector<RestartOutcome> outcomes;
  for (std::size_t r = 0; r < initial.size(); ++r) {
    Rng rng = make_rng(cfg.seed, "restart", r);
    OrderedPartition p = initial[r];
    std::vector<OrderedPartition> log;
    for (;;) {
      log.clear();
      auto better = dfs_improve(cache, p, dfs, rng, &log, &result.stats);
      if (!better) break;
      p = std::move(*better);
      ++result.stats.descents;
    }
    outcomes.push_back({p, cache.get(p), std::move(log)});
    result.restart_scores.push_back(outcomes.back().score);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].score < outcomes[best].score) best = r;
  }
  result.best = outcomes[best].final;
  result.best_score = outcomes[best].score;

  std::unordered_set<OrderedPartition, PartitionHash> seen;
  auto log_one = [&](const OrderedPartition& p) {
    if (result.plateau.size() < cfg.plateau_log_limit && seen.insert(p).second) result.plateau.push_back(p);
  };
  log_one(result.best);
  for (const auto& q : outcomes[best].plateau) log_one(q);
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (r == best || outcomes[r].score != result.best_score) continue;
    log_one(outcomes[r].final);
    for (const auto& q : outcomes[r].plateau) log_one(q);
  }
  result.stats.evaluations = cache.evaluations();
  return result;
}

std::vector<OrderedPartition> more_plateau(const CiOracle& ci, const SearchResult& result, std::size_t limit,
                                           std::uint64_t seed, const ScoreOptions& opts) {
  ScoreCache cache(ci, opts);
  Rng rng = make_rng(seed, "plateau");
  const ScoreVector target = cache.get(result.best);
  std::unordered_set<OrderedPartition, PartitionHash> seen(result.plateau.begin(), result.plateau.end());
  seen.insert(result.best);
  std::vector<OrderedPartition> out;
  std::deque<OrderedPartition> frontier{result.best};
  frontier.insert(frontier.end(), result.plateau.begin(), result.plateau.end());
  std::unordered_set<OrderedPartition, PartitionHash> expanded;
  while (!frontier.empty() && out.size() < limit) {
    OrderedPartition p = std::move(frontier.front());
    frontier.pop_front();
    if (!expanded.insert(p).second) continue;
    auto nbrs = neighbors(p);
    shuffle_in_place(nbrs, rng);
    for (auto& q : nbrs) {
      if (seen.count(q) || cache.get(q) != target) continue;
      seen.insert(q);
      out.push_back(q);
      if (out.size() >= limit) break;
      frontier.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace cycdisc
