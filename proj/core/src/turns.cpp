#include <algorithm>
#include <numeric>
#include <set>

#include "graphrep/optimize.hpp"

namespace graphrep {

const char* to_string(TurnClass c) {
  switch (c) {
    case TurnClass::Good: return "good";
    case TurnClass::FullyControlled: return "fully-controlled";
    case TurnClass::HalfControlled: return "half-controlled";
    case TurnClass::Bad: return "bad";
    case TurnClass::Inefficient: return "inefficient";
  }
  return "good";
}

const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::None: return "none";
    case ReductionKind::SeparatingCurve: return "invariant-curve-separating";
    case ReductionKind::NonSeparatingCurve: return "invariant-curve-non-separating";
    case ReductionKind::AttractorRepellor: return "attractor-repellor";
  }
  return "none";
}

namespace {

std::pair<Dart, Dart> unordered(Dart a, Dart b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

struct SubgraphShape {
  int vertices = 0;
  int edges = 0;
  int components = 0;
  bool all_circles = true;  // every component is a simple closed curve
  int euler() const { return vertices - edges; }
};

SubgraphShape shape_of(const ControlledRibbonGraph& g, const std::vector<char>& in) {
  SubgraphShape s;
  std::vector<int> parent(g.vertex_slots());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> deg(g.vertex_slots(), 0);
  for (EdgeId e : g.edges()) {
    if (!in[e]) continue;
    ++s.edges;
    VertexId a = g.origin(forward_dart(e)), b = g.origin(backward_dart(e));
    ++deg[a];
    ++deg[b];
    parent[find(a)] = find(b);
  }
  std::vector<int> comp_v(g.vertex_slots(), 0), comp_e(g.vertex_slots(), 0);
  for (VertexId v : g.vertices()) {
    if (!deg[v]) continue;
    ++s.vertices;
    ++comp_v[find(v)];
    if (deg[v] != 2) s.all_circles = false;
  }
  for (EdgeId e : g.edges())
    if (in[e]) ++comp_e[find(g.origin(forward_dart(e)))];
  for (VertexId v : g.vertices())
    if (deg[v] && find(v) == v) {
      ++s.components;
      if (comp_e[v] != comp_v[v]) s.all_circles = false;
    }
  if (s.edges == 0) s.all_circles = false;
  return s;
}

bool invariant(const ControlledGraphMap& m, const std::vector<char>& in) {
  for (EdgeId e : m.graph.edges())
    if (in[e])
      for (Dart d : m.edge_image[e].darts)
        if (!in[edge_of(d)]) return false;
  return true;
}

ReductionFinding make_finding(const ControlledGraphMap& m, const std::vector<char>& in,
                              ReductionKind kind) {
  const auto& g = m.graph;
  ReductionFinding f;
  f.kind = kind;
  SubgraphShape s = shape_of(g, in);
  f.euler = s.euler();
  f.components = s.components;
  for (EdgeId e : g.edges()) {
    if (in[e]) {
      f.edges.push_back(g.edge_name(e));
      if (g.is_control(e)) f.h_has_control = true;
    } else if (g.is_control(e)) {
      f.complement_has_control = true;
    }
  }
  return f;
}

}  // namespace

std::vector<std::pair<Dart, Dart>> turns_taken(const ControlledGraphMap& m, int depth) {
  const auto& g = m.graph;
  std::set<std::pair<Dart, Dart>> taken;
  std::vector<std::pair<Dart, Dart>> frontier;
  for (EdgeId e : g.edges()) {
    const auto& p = m.edge_image[e].darts;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      auto t = unordered(g.rev(p[i]), p[i + 1]);
      if (t.first != t.second && taken.insert(t).second) frontier.push_back(t);
    }
  }
  for (int level = 1; level < depth && !frontier.empty(); ++level) {
    std::vector<std::pair<Dart, Dart>> next;
    for (auto [a, b] : frontier) {
      Dart da = m.derivative(a), db = m.derivative(b);
      if (da == kNoDart || db == kNoDart || da == db) continue;
      auto t = unordered(da, db);
      if (taken.insert(t).second) next.push_back(t);
    }
    frontier = std::move(next);
  }
  return {taken.begin(), taken.end()};
}

std::vector<TurnClassification> classify_turns(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  auto taken_list = turns_taken(m, std::max(1, 2 * g.edge_count()));
  std::set<std::pair<Dart, Dart>> taken(taken_list.begin(), taken_list.end());
  std::vector<TurnClassification> out;
  for (VertexId v : g.vertices()) {
    if (g.valence(v) < 2) continue;
    for (Dart a : g.rotation(v)) {
      Dart b = g.succ(a);
      TurnClassification t{v, a, b, TurnClass::Good};
      Dart da = m.derivative(a), db = m.derivative(b);
      if (da != kNoDart && da == db) {
        bool ca = g.is_control(edge_of(a)), cb = g.is_control(edge_of(b));
        if (ca && cb)
          t.cls = TurnClass::FullyControlled;
        else if (ca || cb)
          t.cls = TurnClass::HalfControlled;
        else if (taken.count(unordered(a, b)))
          t.cls = TurnClass::Inefficient;
        else
          t.cls = TurnClass::Bad;
      }
      out.push_back(t);
    }
  }
  return out;
}

Certificate is_optimal(const ControlledGraphMap& m) {
  Certificate c;
  for (const auto& t : classify_turns(m)) {
    if (t.cls == TurnClass::Bad || t.cls == TurnClass::Inefficient) {
      c.holds = false;
      c.turn = t;
      c.reason = "bad turn (" + m.graph.dart_name(t.first) + ", " +
                 m.graph.dart_name(t.second) + ")";
      return c;
    }
  }
  auto forest = find_invariant_forest(m);
  if (!forest.empty()) {
    c.holds = false;
    c.forest = forest;
    c.reason = "invariant forest without control edges";
  }
  return c;
}

Certificate is_efficient(const ControlledGraphMap& m) {
  Certificate c;
  for (const auto& t : classify_turns(m)) {
    if (t.cls == TurnClass::Inefficient) {
      c.holds = false;
      c.turn = t;
      c.reason = "inefficient turn (" + m.graph.dart_name(t.first) + ", " +
                 m.graph.dart_name(t.second) + ")";
      return c;
    }
  }
  auto forest = find_invariant_forest(m);
  if (!forest.empty()) {
    c.holds = false;
    c.forest = forest;
    c.reason = "invariant forest without control edges";
  }
  return c;
}

std::optional<FreeSubgraph> find_invariant_free_subgraph(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  std::vector<char> in(g.edge_slots(), 0);
  for (EdgeId e : g.edges()) in[e] = g.kind(e) == EdgeKind::Free ? 1 : 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (EdgeId e : g.edges()) {
      if (!in[e]) continue;
      for (Dart d : m.edge_image[e].darts)
        if (!in[edge_of(d)]) {
          in[e] = 0;
          changed = true;
          break;
        }
    }
  }
  FreeSubgraph s;
  for (EdgeId e : g.edges())
    if (in[e]) s.edges.push_back(e);
  if (s.edges.empty()) return std::nullopt;
  SubgraphShape sh = shape_of(g, in);
  s.is_forest = sh.edges == sh.vertices - sh.components;
  return s;
}

std::optional<ReductionFinding> find_invariant_curve_reduction(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  auto s = find_invariant_free_subgraph(m);
  if (!s || s->is_forest) return std::nullopt;
  // Keep the closure of the components that carry cycles.
  std::vector<char> in(g.edge_slots(), 0);
  for (EdgeId e : s->edges) in[e] = 1;
  std::vector<int> parent(g.vertex_slots());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> cyclic(g.vertex_slots(), 0);
  for (EdgeId e : s->edges) {
    int a = find(g.origin(forward_dart(e))), b = find(g.origin(backward_dart(e)));
    if (a == b)
      cyclic[a] = 1;
    else {
      parent[a] = b;
      cyclic[b] = cyclic[b] || cyclic[a];
    }
  }
  std::vector<EdgeId> seeds;
  for (EdgeId e : s->edges)
    if (cyclic[find(g.origin(forward_dart(e)))]) seeds.push_back(e);
  std::vector<char> h = forward_closure(m, seeds);
  SubgraphShape sh = shape_of(g, h);
  ReductionKind kind =
      sh.euler() < 0 ? ReductionKind::SeparatingCurve : ReductionKind::NonSeparatingCurve;
  return make_finding(m, h, kind);
}

std::optional<ReductionFinding> find_attractor_repellor(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  std::vector<char> ess(g.edge_slots(), 0);
  for (EdgeId e : essential_edges(m)) ess[e] = 1;
  std::optional<ReductionFinding> best;
  std::size_t best_size = 0;
  std::set<std::vector<char>> seen;
  for (EdgeId e : g.edges()) {
    if (!ess[e]) continue;
    std::vector<char> h = forward_closure(m, {e});
    if (!seen.insert(h).second) continue;
    SubgraphShape sh = shape_of(g, h);
    bool all_peripheral = true;
    bool h_control = false, rest_control = false;
    for (EdgeId x : g.edges()) {
      if (h[x] && g.kind(x) != EdgeKind::Peripheral) all_peripheral = false;
      if (h[x] && g.is_control(x)) h_control = true;
      if (!h[x] && ess[x] && g.is_control(x)) rest_control = true;
    }
    bool shaped = sh.euler() < 0 || (sh.all_circles && !all_peripheral);
    if (!shaped || !h_control || !rest_control) continue;
    if (!best || static_cast<std::size_t>(sh.edges) < best_size) {
      best = make_finding(m, h, ReductionKind::AttractorRepellor);
      best_size = sh.edges;
    }
  }
  return best;
}

bool verify_reduction(const ControlledGraphMap& m, const ReductionFinding& f, std::string* why) {
  const auto& g = m.graph;
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (f.kind == ReductionKind::None) return fail("no reduction");
  std::vector<char> in(g.edge_slots(), 0);
  for (const auto& n : f.edges) {
    auto e = g.find_edge(n);
    if (!e) return fail("unknown edge " + n);
    in[*e] = 1;
  }
  if (!invariant(m, in)) return fail("subgraph not invariant");
  SubgraphShape sh = shape_of(g, in);
  bool h_control = false, rest_control = false, all_peripheral = true;
  for (EdgeId e : g.edges()) {
    if (in[e] && g.is_control(e)) h_control = true;
    if (!in[e] && g.is_control(e)) rest_control = true;
    if (in[e] && g.kind(e) != EdgeKind::Peripheral) all_peripheral = false;
  }
  switch (f.kind) {
    case ReductionKind::SeparatingCurve:
      if (h_control) return fail("subgraph contains control edges");
      if (sh.euler() >= 0) return fail("Euler characteristic not negative");
      return true;
    case ReductionKind::NonSeparatingCurve:
      if (h_control) return fail("subgraph contains control edges");
      if (!sh.all_circles) return fail("not a union of simple closed curves");
      if (all_peripheral) return fail("contained in the peripheral subgraph");
      return true;
    case ReductionKind::AttractorRepellor:
      if (!h_control || !rest_control) return fail("control edges not on both sides");
      return true;
    case ReductionKind::None: break;
  }
  return fail("no reduction");
}

}  // namespace graphrep
