#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cycdisc/dsep.hpp"
#include "cycdisc/graph.hpp"
#include "cycdisc/mec.hpp"
#include "cycdisc/partition.hpp"

namespace cycdisc {

// Lexicographically compared; smaller is better.
struct ScoreVector {
  std::vector<long long> entries;
  auto operator<=>(const ScoreVector&) const = default;
};

std::string format_score(const ScoreVector& s);

struct MecSummary {
  std::set<Edge> e1;
  std::set<Triple> e2;
  std::set<Triple> e3;
  std::set<std::pair<Triple, Triple>> e4;
  std::map<int, std::set<Itinerary>> d;  // keys 1..n-2, all present
  std::set<std::pair<Itinerary, Triple>> e6;
  bool operator==(const MecSummary&) const = default;
};

struct ScoreOptions {
  // Whether E4 keeps pairs whose two triples coincide (b1 = b2).
  bool e4_equal_pairs = true;
};

// Ordered pairs (a,b) dependent given everything at or below the higher of
// their two blocks.
std::set<Edge> compute_e1(const CiOracle& ci, const OrderedPartition& p);

MecSummary compute_sets(const CiOracle& ci, const OrderedPartition& p, const ScoreOptions& opts = {});

// (|E1|, |E2|, |E3|, |E4|, -|D2|, ..., -|D(n-2)|, |E6|).
ScoreVector score_vector(const CiOracle& ci, const OrderedPartition& p, const ScoreOptions& opts = {});

// The same sets read off an explicit graph: p-adjacencies, conductors, perfect
// non-conductors, ancestor-related imperfect pairs, mutually exclusive
// itineraries and their ancestor-related imperfect triples.
MecSummary graph_summary(const DirectedGraph& g, const ScoreOptions& opts = {});

// Human-readable dump of every set, used by the CLI.
std::string format_summary(const MecSummary& s);

}  // namespace cycdisc
