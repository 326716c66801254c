#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cycdisc/vertex_set.hpp"

namespace cycdisc {

// Bit i stands for block i of a partition.
using BlockSet = std::uint64_t;

// A partition of [n] together with a strict order on its blocks.
//
// The constructor brings any input to canonical form: blocks are sorted by their
// smallest vertex and the order is stored as successor masks over the sorted
// indices. It does not check the partial-order axioms; see validate().
class OrderedPartition {
 public:
  OrderedPartition() = default;
  OrderedPartition(int n, std::vector<VertexSet> blocks,
                   const std::vector<std::pair<int, int>>& order = {});

  int n() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<VertexSet>& blocks() const { return blocks_; }
  VertexSet block(int i) const { return blocks_[i]; }
  int block_of(Vertex v) const { return block_of_[v]; }

  bool less(int i, int j) const { return ((succ_[i] >> j) & 1U) != 0; }
  bool leq(int i, int j) const { return i == j || less(i, j); }
  BlockSet successors(int i) const { return succ_[i]; }
  BlockSet predecessors(int i) const;

  // Strict pairs (i,j), sorted.
  std::vector<std::pair<int, int>> order_pairs() const;
  std::size_t order_size() const;

  std::size_t hash() const;
  bool operator==(const OrderedPartition& other) const = default;

 private:
  int n_ = 0;
  std::vector<VertexSet> blocks_;
  std::vector<BlockSet> succ_;
  std::vector<int> block_of_;
};

struct PartitionHash {
  std::size_t operator()(const OrderedPartition& p) const { return p.hash(); }
};

// Document form:
//   n=4
//   blocks {1,4} {2} {3}
//   order {2} < {3}
std::string format_partition(const OrderedPartition& p);
OrderedPartition parse_partition(std::string_view text);

// One-line form used in logs and CSV: "{1,4} {2} {3} | {2}<{3}".
std::string describe(const OrderedPartition& p);

}  // namespace cycdisc
