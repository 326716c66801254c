#include "cycdisc/sccr.hpp"

#include <algorithm>

#include "cycdisc/graph.hpp"
#include "cycdisc/mec.hpp"
#include "text_util.hpp"

namespace cycdisc {

namespace {

void sort_unique(std::vector<Edge>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void symmetrize(std::vector<Edge>& v) {
  const std::size_t k = v.size();
  for (std::size_t i = 0; i < k; ++i) v.emplace_back(v[i].second, v[i].first);
  sort_unique(v);
}

std::string edge_text(Edge e) { return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"; }

}  // namespace

SccrInstance normalized(SccrInstance inst) {
  symmetrize(inst.a_c);
  sort_unique(inst.b_c);
  symmetrize(inst.com_ch);
  symmetrize(inst.no_com_ch);
  return inst;
}

std::vector<std::string> check_instance(const SccrInstance& inst) {
  std::vector<std::string> out;
  if (inst.n < 1 || inst.n > kMaxVertices) {
    out.push_back("vertex count out of range");
    return out;
  }
  if (inst.c == 0) out.push_back("C is empty");
  if ((inst.c & ~full_set(inst.n)) != 0) out.push_back("C has vertices outside 1..n");
  auto in_c = [&](Vertex v) { return contains(inst.c, v); };
  auto in_range = [&](Edge e) { return e.first >= 1 && e.first <= inst.n && e.second >= 1 && e.second <= inst.n; };
  for (Edge e : inst.a_c) {
    if (!in_range(e) || e.first == e.second || !in_c(e.first) || !in_c(e.second)) {
      out.push_back("A pair " + edge_text(e) + " not inside C");
    }
  }
  for (Edge e : inst.b_c) {
    if (!in_range(e) || in_c(e.first) || !in_c(e.second)) out.push_back("B pair " + edge_text(e) + " not from outside into C");
  }
  for (const auto* list : {&inst.com_ch, &inst.no_com_ch}) {
    for (Edge e : *list) {
      if (!in_range(e) || e.first == e.second || in_c(e.first) || in_c(e.second)) {
        out.push_back("common-child pair " + edge_text(e) + " not outside C");
      }
    }
  }
  for (Edge e : inst.com_ch) {
    if (std::find(inst.no_com_ch.begin(), inst.no_com_ch.end(), e) != inst.no_com_ch.end()) {
      out.push_back("pair " + edge_text(e) + " both required and forbidden a common child");
    }
  }
  return out;
}

std::string format_instance(const SccrInstance& inst) {
  auto line = [](const char* key, const std::vector<Edge>& v) {
    std::string s = key;
    for (Edge e : v) s += " " + edge_text(e);
    return s + "\n";
  };
  std::string out = "n=" + std::to_string(inst.n) + "\n";
  out += "C " + format_set(inst.c) + "\n";
  out += line("A", inst.a_c);
  out += line("B", inst.b_c);
  out += line("ComCh", inst.com_ch);
  out += line("NoComCh", inst.no_com_ch);
  return out;
}

SccrInstance parse_instance(std::string_view text) {
  auto lines = detail::content_lines(text);
  SccrInstance inst;
  inst.n = detail::parse_header(lines, kMaxVertices);
  bool seen_c = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& ln = lines[k];
    const auto space = ln.text.find_first_of(" \t");
    const std::string_view key = ln.text.substr(0, space);
    const std::string_view rest = space == std::string_view::npos ? std::string_view{} : ln.text.substr(space);
    if (key == "C") {
      if (seen_c) detail::fail(ln, "duplicate C line");
      seen_c = true;
      for (int v : detail::integers(ln, rest, "{},")) {
        if (v < 1 || v > inst.n) detail::fail(ln, "vertex out of range");
        inst.c |= bit(v);
      }
      continue;
    }
    std::vector<Edge>* target = nullptr;
    if (key == "A") target = &inst.a_c;
    if (key == "B") target = &inst.b_c;
    if (key == "ComCh") target = &inst.com_ch;
    if (key == "NoComCh") target = &inst.no_com_ch;
    if (!target) detail::fail(ln, "unknown section \"" + std::string(key) + "\"");
    auto nums = detail::integers(ln, rest, "(),");
    if (nums.size() % 2 != 0) detail::fail(ln, "odd number of endpoints");
    for (std::size_t i = 0; i < nums.size(); i += 2) target->emplace_back(nums[i], nums[i + 1]);
  }
  if (!seen_c) throw ParseError("missing C line");
  inst = normalized(std::move(inst));
  auto problems = check_instance(inst);
  if (!problems.empty()) throw ParseError("invalid instance: " + problems.front());
  return inst;
}

InstanceMasks::InstanceMasks(const SccrInstance& inst)
    : n(inst.n), c(inst.c), a(inst.n + 1, 0), b(inst.n + 1, 0), no_com(inst.n + 1, 0), com(inst.n + 1, 0) {
  for (auto [u, v] : inst.a_c) a[u] |= bit(v);
  for (auto [u, v] : inst.b_c) b[u] |= bit(v);
  for (auto [u, v] : inst.no_com_ch) {
    no_com[u] |= bit(v);
    no_com[v] |= bit(u);
  }
  for (auto [u, v] : inst.com_ch) {
    com[u] |= bit(v);
    com[v] |= bit(u);
  }
}

bool is_safe(Edge e, const ParentBag& parents, const InstanceMasks& m) {
  const auto [a, b] = e;
  for (Vertex v : parents[b]) {
    if (v == a) continue;
    if (m.forbidden(v, a)) return false;
    if ((m.in_c(v) || m.in_c(a)) && !m.linked(v, a)) return false;
  }
  return true;
}

bool are_incompatible(Edge e1, Edge e2, const InstanceMasks& m) {
  const Vertex a = e1.first;
  const Vertex c = e2.first;
  if (a == c) return false;
  if (!m.in_c(a) && !m.in_c(c)) return m.forbidden(a, c);
  return !m.linked(a, c);
}

Validation validate_output(const std::vector<Edge>& e_c, const SccrInstance& raw) {
  const SccrInstance inst = normalized(raw);
  Validation out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.violations.push_back(std::move(msg));
  };
  DirectedGraph g(inst.n);
  for (Edge e : e_c) {
    if (e.first < 1 || e.first > inst.n || e.second < 1 || e.second > inst.n || e.first == e.second) {
      fail("edge " + edge_text(e) + " is not a valid edge");
      return out;
    }
    g.add_edge(e.first, e.second);
  }
  const InstanceMasks m(inst);
  const GraphIndex gi(g);
  for (Vertex u = 1; u <= inst.n; ++u) {
    for (Vertex v = u + 1; v <= inst.n; ++v) {
      const bool want = m.linked(u, v);
      const bool have = gi.p_adjacent(u, v);
      if (want && !have) fail("prescribed p-adjacency " + edge_text({u, v}) + " missing");
      if (!want && have) fail("unexpected p-adjacency " + edge_text({u, v}));
    }
  }
  for (Edge e : e_c) {
    if (m.in_c(e.first) && !m.in_c(e.second)) fail("edge " + edge_text(e) + " leaves C");
  }
  const Vertex root = lowest(inst.c);
  const VertexSet reach = descendants(g, bit(root));
  const VertexSet back = ancestors(g, bit(root));
  if ((reach & back & inst.c) != inst.c) fail("C is not strongly connected");
  for (auto [u, v] : inst.com_ch) {
    if (u < v && (g.children(u) & g.children(v) & inst.c) == 0) fail("pair " + edge_text({u, v}) + " lacks a common child in C");
  }
  for (auto [u, v] : inst.no_com_ch) {
    if (u < v && (g.children(u) & g.children(v) & inst.c) != 0) fail("pair " + edge_text({u, v}) + " has a forbidden common child in C");
  }
  return out;
}

}  // namespace cycdisc
