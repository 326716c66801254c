#include "cycdisc/partition.hpp"

#include <algorithm>
#include <numeric>

#include "text_util.hpp"

namespace cycdisc {

OrderedPartition::OrderedPartition(int n, std::vector<VertexSet> blocks,
                                   const std::vector<std::pair<int, int>>& order)
    : n_(n) {
  const int k = static_cast<int>(blocks.size());
  auto key = [&](int i) { return blocks[i] == 0 ? 64 : lowest(blocks[i]); };
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) { return key(x) < key(y); });
  std::vector<int> rank(k);
  for (int i = 0; i < k; ++i) rank[perm[i]] = i;

  blocks_.resize(k);
  succ_.assign(k, 0);
  for (int i = 0; i < k; ++i) blocks_[i] = blocks[perm[i]];
  for (auto [x, y] : order) succ_[rank[x]] |= BlockSet{1} << rank[y];

  block_of_.assign(n + 1, -1);
  for (int i = 0; i < k; ++i) {
    for_each_vertex(blocks_[i], [&](Vertex v) {
      if (v <= n) block_of_[v] = i;
    });
  }
}

BlockSet OrderedPartition::predecessors(int i) const {
  BlockSet out = 0;
  for (int j = 0; j < block_count(); ++j) {
    if (less(j, i)) out |= BlockSet{1} << j;
  }
  return out;
}

std::vector<std::pair<int, int>> OrderedPartition::order_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < block_count(); ++i) {
    for (int j = 0; j < block_count(); ++j) {
      if (less(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t OrderedPartition::order_size() const {
  std::size_t total = 0;
  for (BlockSet s : succ_) total += static_cast<std::size_t>(std::popcount(s));
  return total;
}

std::size_t OrderedPartition::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n_);
  auto mix = [&](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (VertexSet b : blocks_) mix(b);
  for (BlockSet s : succ_) mix(s * 0xff51afd7ed558ccdULL);
  return static_cast<std::size_t>(h);
}

std::string format_partition(const OrderedPartition& p) {
  std::string out = "n=" + std::to_string(p.n()) + "\nblocks";
  for (VertexSet b : p.blocks()) out += " " + format_set(b);
  out += '\n';
  for (auto [i, j] : p.order_pairs()) {
    out += "order " + format_set(p.block(i)) + " < " + format_set(p.block(j)) + '\n';
  }
  return out;
}

std::string describe(const OrderedPartition& p) {
  std::string out;
  for (int i = 0; i < p.block_count(); ++i) {
    if (i > 0) out += ' ';
    out += format_set(p.block(i));
  }
  out += " |";
  for (auto [i, j] : p.order_pairs()) out += " " + format_set(p.block(i)) + "<" + format_set(p.block(j));
  return out;
}

namespace {

// Splits "{1,2} {3}" into vertex sets.
std::vector<VertexSet> parse_sets(const detail::Line& line, std::string_view s, int n) {
  std::vector<VertexSet> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '{') detail::fail(line, "expected '{'");
    auto close = s.find('}', i);
    if (close == std::string_view::npos) detail::fail(line, "unterminated '{'");
    VertexSet set = 0;
    for (int v : detail::integers(line, s.substr(i + 1, close - i - 1), ",")) {
      if (v < 1 || v > n) detail::fail(line, "vertex " + std::to_string(v) + " out of range");
      if (contains(set, v)) detail::fail(line, "repeated vertex " + std::to_string(v));
      set |= bit(v);
    }
    out.push_back(set);
    i = close + 1;
  }
  return out;
}

}  // namespace

OrderedPartition parse_partition(std::string_view text) {
  auto lines = detail::content_lines(text);
  const int n = detail::parse_header(lines, kMaxVertices);
  std::vector<VertexSet> blocks;
  std::vector<std::pair<VertexSet, VertexSet>> pairs;
  bool seen_blocks = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    std::string_view t = line.text;
    if (t.substr(0, 6) == "blocks") {
      if (seen_blocks) detail::fail(line, "duplicate blocks line");
      seen_blocks = true;
      blocks = parse_sets(line, t.substr(6), n);
    } else if (t.substr(0, 5) == "order") {
      auto lt = t.find('<');
      if (lt == std::string_view::npos) detail::fail(line, "expected '<'");
      auto left = parse_sets(line, t.substr(5, lt - 5), n);
      auto right = parse_sets(line, t.substr(lt + 1), n);
      if (left.size() != 1 || right.size() != 1) detail::fail(line, "expected one block on each side");
      pairs.emplace_back(left[0], right[0]);
    } else {
      detail::fail(line, "expected \"blocks\" or \"order\"");
    }
  }
  if (!seen_blocks) throw ParseError("missing blocks line");
  VertexSet seen = 0;
  for (VertexSet b : blocks) {
    if (b == 0) throw ParseError("empty block");
    if ((seen & b) != 0) throw ParseError("blocks overlap");
    seen |= b;
  }
  if (seen != full_set(n)) throw ParseError("blocks do not cover 1.." + std::to_string(n));
  std::vector<std::pair<int, int>> order;
  for (auto [x, y] : pairs) {
    auto ix = std::find(blocks.begin(), blocks.end(), x);
    auto iy = std::find(blocks.begin(), blocks.end(), y);
    if (ix == blocks.end() || iy == blocks.end()) throw ParseError("order refers to an unknown block");
    order.emplace_back(static_cast<int>(ix - blocks.begin()), static_cast<int>(iy - blocks.begin()));
  }
  return OrderedPartition(n, std::move(blocks), order);
}

}  // namespace cycdisc
