#include "cycdisc/poset.hpp"

#include <unordered_set>

#include "cycdisc/errors.hpp"

namespace cycdisc {

namespace {

using Relation = std::vector<BlockSet>;

bool is_strict_order(const Relation& succ) {
  const int k = static_cast<int>(succ.size());
  for (int i = 0; i < k; ++i) {
    if ((succ[i] >> i) & 1U) return false;
    for (int j = 0; j < k; ++j) {
      if (!((succ[i] >> j) & 1U)) continue;
      if ((succ[j] >> i) & 1U) return false;
      if ((succ[j] & ~succ[i]) != 0) return false;
    }
  }
  return true;
}

std::vector<std::pair<int, int>> pairs_of(const Relation& succ) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(succ.size()); ++i) {
    for (int j = 0; j < static_cast<int>(succ.size()); ++j) {
      if ((succ[i] >> j) & 1U) out.emplace_back(i, j);
    }
  }
  return out;
}

Relation relation_of(const OrderedPartition& p) {
  Relation r(p.block_count());
  for (int i = 0; i < p.block_count(); ++i) r[i] = p.successors(i);
  return r;
}

class NeighborSink {
 public:
  explicit NeighborSink(const OrderedPartition& origin) : origin_(origin) {}

  void offer(std::vector<VertexSet> blocks, const Relation& succ) {
    for (VertexSet b : blocks) {
      if (b == 0) return;
    }
    if (!is_strict_order(succ)) return;
    OrderedPartition q(origin_.n(), std::move(blocks), pairs_of(succ));
    if (q == origin_) return;
    if (seen_.insert(q).second) out_.push_back(std::move(q));
  }

  std::vector<OrderedPartition> take() { return std::move(out_); }

 private:
  const OrderedPartition& origin_;
  std::unordered_set<OrderedPartition, PartitionHash> seen_;
  std::vector<OrderedPartition> out_;
};

void set_partitions(int n, int v, std::vector<VertexSet>& blocks, std::vector<std::vector<VertexSet>>& out) {
  if (v > n) {
    out.push_back(blocks);
    return;
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i] |= bit(v);
    set_partitions(n, v + 1, blocks, out);
    blocks[i] &= ~bit(v);
  }
  blocks.push_back(bit(v));
  set_partitions(n, v + 1, blocks, out);
  blocks.pop_back();
}

// Labelled strict orders on {0..k-1}, built by inserting elements one at a time:
// the new element m gets a down-closed set of predecessors D and an up-closed set
// of successors U with every member of D already below every member of U.
void posets(int k, int m, Relation& succ, std::vector<Relation>& out) {
  if (m == k) {
    out.push_back(succ);
    return;
  }
  const BlockSet existing = (BlockSet{1} << m) - 1;
  std::vector<BlockSet> pred(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if ((succ[j] >> i) & 1U) pred[i] |= BlockSet{1} << j;
    }
  }
  for (BlockSet down = 0;; down = (down - existing) & existing) {
    bool down_closed = true;
    for (int i = 0; i < m && down_closed; ++i) {
      if (((down >> i) & 1U) && (pred[i] & ~down) != 0) down_closed = false;
    }
    if (down_closed) {
      const BlockSet rest = existing & ~down;
      for (BlockSet up = 0;; up = (up - rest) & rest) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
          if (((up >> i) & 1U) && (succ[i] & ~up) != 0) ok = false;
          if (((down >> i) & 1U) && (up & ~succ[i]) != 0) ok = false;
        }
        if (ok) {
          Relation next = succ;
          for (int i = 0; i < m; ++i) {
            if ((down >> i) & 1U) next[i] |= BlockSet{1} << m;
          }
          next[m] = up;
          posets(k, m + 1, next, out);
        }
        if (up == rest) break;
      }
    }
    if (down == existing) break;
  }
}

}  // namespace

bool validate(const OrderedPartition& p) {
  VertexSet seen = 0;
  for (VertexSet b : p.blocks()) {
    if (b == 0 || (seen & b) != 0) return false;
    seen |= b;
  }
  if (seen != full_set(p.n())) return false;
  return is_strict_order(relation_of(p));
}

std::vector<std::pair<int, int>> consecutive_pairs(const OrderedPartition& p) {
  std::vector<std::pair<int, int>> out;
  for (auto [i, j] : p.order_pairs()) {
    bool cover = true;
    for (int m = 0; m < p.block_count() && cover; ++m) {
      if (p.less(i, m) && p.less(m, j)) cover = false;
    }
    if (cover) out.emplace_back(i, j);
  }
  return out;
}

std::vector<OrderedPartition> neighbors(const OrderedPartition& p) {
  NeighborSink sink(p);
  const int k = p.block_count();
  const Relation base = relation_of(p);

  // Order edits by a single pair.
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      Relation r = base;
      r[i] ^= BlockSet{1} << j;
      sink.offer(p.blocks(), r);
    }
  }

  // One vertex crosses a consecutive pair; the order is carried over by renaming.
  for (auto [i, j] : consecutive_pairs(p)) {
    for (auto [from, to] : {std::pair{i, j}, std::pair{j, i}}) {
      for_each_vertex(p.block(from), [&](Vertex a) {
        std::vector<VertexSet> blocks = p.blocks();
        blocks[from] &= ~bit(a);
        blocks[to] |= bit(a);
        sink.offer(std::move(blocks), base);
      });
    }
  }

  // Extraction of a into a new singleton block, right before or right after.
  for (int i = 0; i < k; ++i) {
    if (set_size(p.block(i)) < 2) continue;
    const BlockSet pred = p.predecessors(i);
    const BlockSet succ = p.successors(i);
    const BlockSet single = BlockSet{1} << k;
    for_each_vertex(p.block(i), [&](Vertex a) {
      std::vector<VertexSet> blocks = p.blocks();
      blocks[i] &= ~bit(a);
      blocks.push_back(bit(a));

      Relation before = base;
      before.push_back(succ | (BlockSet{1} << i));
      for (int c = 0; c < k; ++c) {
        if ((pred >> c) & 1U) before[c] |= single;
      }
      sink.offer(blocks, before);

      Relation after = base;
      after.push_back(succ);
      for (int c = 0; c < k; ++c) {
        if (((pred >> c) & 1U) || c == i) after[c] |= single;
      }
      sink.offer(blocks, after);
    });
  }
  return sink.take();
}

std::vector<OrderedPartition> enumerate_all(int n, int guard) {
  if (n < 1) throw std::invalid_argument("enumerate_all needs n >= 1");
  if (n > guard) {
    throw GuardError("enumerate_all refuses n=" + std::to_string(n) + " (limit " + std::to_string(guard) + ")");
  }
  std::vector<std::vector<VertexSet>> partitions;
  std::vector<VertexSet> scratch;
  set_partitions(n, 1, scratch, partitions);

  std::vector<std::vector<Relation>> orders_by_size(n + 1);
  for (int k = 1; k <= n; ++k) {
    Relation empty(k, 0);
    posets(k, 0, empty, orders_by_size[k]);
  }

  std::vector<OrderedPartition> out;
  for (const auto& blocks : partitions) {
    for (const auto& r : orders_by_size[blocks.size()]) out.emplace_back(n, blocks, pairs_of(r));
  }
  return out;
}

}  // namespace cycdisc
