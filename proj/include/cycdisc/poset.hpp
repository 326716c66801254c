#pragma once

#include <utility>
#include <vector>

#include "cycdisc/partition.hpp"

namespace cycdisc {

// Blocks are nonempty, disjoint and cover [n]; the order is irreflexive,
// antisymmetric and transitively closed.
bool validate(const OrderedPartition& p);

// Pairs (i,j) with i < j and nothing strictly in between.
std::vector<std::pair<int, int>> consecutive_pairs(const OrderedPartition& p);

// All partitions one move away: adding or removing a single order pair, moving
// one vertex across a consecutive pair, or pulling one vertex out into a new
// singleton placed right before or right after its old block. Invalid results
// are dropped; the list is deduplicated and never contains p itself.
std::vector<OrderedPartition> neighbors(const OrderedPartition& p);

inline constexpr int kEnumerateGuard = 5;

// Every ordered partition of [n]. Throws GuardError when n > guard.
std::vector<OrderedPartition> enumerate_all(int n, int guard = kEnumerateGuard);

}  // namespace cycdisc
