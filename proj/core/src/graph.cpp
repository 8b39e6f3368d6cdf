#include "graphrep/graph.hpp"

#include <algorithm>
#include <sstream>

namespace graphrep {

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Free: return "free";
    case EdgeKind::Control: return "control";
    case EdgeKind::Peripheral: return "peripheral";
  }
  return "free";
}

std::optional<EdgeKind> parse_edge_kind(const std::string& s) {
  if (s == "free") return EdgeKind::Free;
  if (s == "control") return EdgeKind::Control;
  if (s == "peripheral") return EdgeKind::Peripheral;
  return std::nullopt;
}

bool ValidationReport::has(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::to_string() const {
  if (ok()) return "pass";
  std::ostringstream os;
  for (const auto& v : violations) os << v.rule << ": " << v.detail << "\n";
  return os.str();
}

VertexId ControlledRibbonGraph::add_vertex(std::string name) {
  vname_.push_back(std::move(name));
  vmarked_.push_back(0);
  valive_.push_back(1);
  rot_.emplace_back();
  return vertex_slots() - 1;
}

EdgeId ControlledRibbonGraph::add_edge(std::string name, EdgeKind kind,
                                       VertexId from, VertexId to,
                                       std::string marked_point) {
  EdgeId e = edge_slots();
  if (kind == EdgeKind::Control && marked_point.empty()) marked_point = "w_" + name;
  ename_.push_back(std::move(name));
  kind_.push_back(kind);
  mark_.push_back(std::move(marked_point));
  ealive_.push_back(1);
  rev_.push_back(2 * e + 1);
  rev_.push_back(2 * e);
  origin_.push_back(from);
  origin_.push_back(to);
  pos_.push_back(-1);
  pos_.push_back(-1);
  return e;
}

void ControlledRibbonGraph::set_rotation(VertexId v, std::vector<Dart> order) {
  for (Dart d : rot_[v])
    if (d >= 0 && d < dart_slots() && pos_[d] >= 0) pos_[d] = -1;
  rot_[v] = std::move(order);
  reindex(v);
}

void ControlledRibbonGraph::reindex(VertexId v) {
  for (int i = 0; i < static_cast<int>(rot_[v].size()); ++i) {
    Dart d = rot_[v][i];
    if (d >= 0 && d < dart_slots()) pos_[d] = i;
  }
}

int ControlledRibbonGraph::vertex_count() const {
  return static_cast<int>(std::count(valive_.begin(), valive_.end(), 1));
}

int ControlledRibbonGraph::edge_count() const {
  return static_cast<int>(std::count(ealive_.begin(), ealive_.end(), 1));
}

std::vector<VertexId> ControlledRibbonGraph::vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_slots(); ++v)
    if (valive_[v]) out.push_back(v);
  return out;
}

std::vector<EdgeId> ControlledRibbonGraph::edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edge_slots(); ++e)
    if (ealive_[e]) out.push_back(e);
  return out;
}

std::string ControlledRibbonGraph::dart_name(Dart d) const {
  if (d < 0) return "·";
  return is_backward(d) ? "~" + ename_[edge_of(d)] : ename_[edge_of(d)];
}

Dart ControlledRibbonGraph::succ(Dart d) const {
  const auto& r = rot_[origin_[d]];
  return r[(pos_[d] + 1) % r.size()];
}

Dart ControlledRibbonGraph::pred(Dart d) const {
  const auto& r = rot_[origin_[d]];
  return r[(pos_[d] + r.size() - 1) % r.size()];
}

bool ControlledRibbonGraph::is_control_vertex(VertexId v) const {
  for (Dart d : rot_[v])
    if (is_control(edge_of(d))) return true;
  return false;
}

std::optional<VertexId> ControlledRibbonGraph::find_vertex(const std::string& name) const {
  for (VertexId v = 0; v < vertex_slots(); ++v)
    if (valive_[v] && vname_[v] == name) return v;
  return std::nullopt;
}

std::optional<EdgeId> ControlledRibbonGraph::find_edge(const std::string& name) const {
  for (EdgeId e = 0; e < edge_slots(); ++e)
    if (ealive_[e] && ename_[e] == name) return e;
  return std::nullopt;
}

std::optional<Dart> ControlledRibbonGraph::find_dart(const std::string& token) const {
  if (token.empty()) return std::nullopt;
  if (token[0] == '~') {
    auto e = find_edge(token.substr(1));
    if (!e) return std::nullopt;
    return backward_dart(*e);
  }
  auto e = find_edge(token);
  if (!e) return std::nullopt;
  return forward_dart(*e);
}

void ControlledRibbonGraph::kill_edge(EdgeId e) {
  for (Dart d : {forward_dart(e), backward_dart(e)}) {
    VertexId v = origin_[d];
    if (v >= 0 && v < vertex_slots()) {
      auto& r = rot_[v];
      r.erase(std::remove(r.begin(), r.end(), d), r.end());
      pos_[d] = -1;
      reindex(v);
    }
  }
  ealive_[e] = 0;
}

void ControlledRibbonGraph::kill_vertex(VertexId v) {
  rot_[v].clear();
  valive_[v] = 0;
}

std::string ControlledRibbonGraph::fresh_vertex_name(const std::string& stem) const {
  for (int k = 1;; ++k) {
    std::string n = stem + std::to_string(k);
    if (std::find(vname_.begin(), vname_.end(), n) == vname_.end()) return n;
  }
}

std::string ControlledRibbonGraph::fresh_edge_name(const std::string& stem) const {
  for (int k = 1;; ++k) {
    std::string n = stem + std::to_string(k);
    if (std::find(ename_.begin(), ename_.end(), n) == ename_.end()) return n;
  }
}

ValidationReport validate_graph(const ControlledRibbonGraph& g) {
  ValidationReport r;
  const int nd = g.dart_slots();
  for (EdgeId e : g.edges()) {
    for (Dart d : {forward_dart(e), backward_dart(e)}) {
      Dart rd = g.rev(d);
      if (rd == d) {
        r.add("involution has fixed point", g.dart_name(d));
        continue;
      }
      if (rd < 0 || rd >= nd || g.rev(rd) != d)
        r.add("rev is not an involution", g.dart_name(d));
      else if (edge_of(rd) != e)
        r.add("rev pairs darts of different edges", g.dart_name(d));
      VertexId o = g.origin(d);
      if (o < 0 || o >= g.vertex_slots() || !g.vertex_alive(o))
        r.add("dangling origin", g.dart_name(d));
    }
  }
  std::vector<int> seen(nd, 0);
  for (VertexId v : g.vertices()) {
    for (Dart d : g.rotation(v)) {
      if (d < 0 || d >= nd || !g.edge_alive(edge_of(d))) {
        r.add("rotation names unknown dart", g.vertex_name(v));
        continue;
      }
      ++seen[d];
      if (g.origin(d) != v)
        r.add("dart listed away from its origin",
              g.dart_name(d) + " at " + g.vertex_name(v));
    }
  }
  for (EdgeId e : g.edges()) {
    for (Dart d : {forward_dart(e), backward_dart(e)}) {
      if (seen[d] == 0) r.add("dart missing from cyclic order", g.dart_name(d));
      if (seen[d] > 1) r.add("dart repeated in cyclic order", g.dart_name(d));
    }
    bool control = g.is_control(e);
    if (control && g.marked_point(e).empty())
      r.add("control edge without marked point", g.edge_name(e));
    if (!control && !g.marked_point(e).empty())
      r.add("marked point on non-control edge", g.edge_name(e));
  }
  // Names must be unique so external formats stay unambiguous.
  std::vector<std::string> names;
  for (EdgeId e : g.edges()) names.push_back(g.edge_name(e));
  std::sort(names.begin(), names.end());
  for (std::size_t i = 1; i < names.size(); ++i)
    if (names[i] == names[i - 1]) r.add("duplicate edge name", names[i]);
  names.clear();
  for (VertexId v : g.vertices()) names.push_back(g.vertex_name(v));
  std::sort(names.begin(), names.end());
  for (std::size_t i = 1; i < names.size(); ++i)
    if (names[i] == names[i - 1]) r.add("duplicate vertex name", names[i]);
  if (!r.ok()) return r;

  // Peripheral edges must lie on simple boundary loops made of peripheral edges.
  auto loops = trace_boundary_loops(g);
  std::vector<char> on_loop(g.edge_slots(), 0);
  for (const auto& loop : loops) {
    bool all_peripheral = true;
    std::vector<VertexId> vs;
    for (Dart d : loop) {
      if (g.kind(edge_of(d)) != EdgeKind::Peripheral) all_peripheral = false;
      vs.push_back(g.origin(d));
    }
    std::sort(vs.begin(), vs.end());
    bool simple = std::adjacent_find(vs.begin(), vs.end()) == vs.end();
    if (all_peripheral && simple)
      for (Dart d : loop) on_loop[edge_of(d)] = 1;
  }
  for (EdgeId e : g.edges())
    if (g.kind(e) == EdgeKind::Peripheral && !on_loop[e])
      r.add("peripheral edge not on a simple peripheral loop", g.edge_name(e));
  return r;
}

std::vector<std::vector<Dart>> trace_boundary_loops(const ControlledRibbonGraph& g) {
  std::vector<std::vector<Dart>> out;
  std::vector<char> used(g.dart_slots(), 0);
  for (EdgeId e : g.edges()) {
    for (Dart start : {forward_dart(e), backward_dart(e)}) {
      if (used[start]) continue;
      std::vector<Dart> cyc;
      Dart d = start;
      while (!used[d]) {
        used[d] = 1;
        cyc.push_back(d);
        d = g.succ(g.rev(d));
      }
      out.push_back(std::move(cyc));
    }
  }
  return out;
}

int euler_characteristic(const ControlledRibbonGraph& g) {
  return g.vertex_count() - g.edge_count();
}

int connected_components(const ControlledRibbonGraph& g) {
  std::vector<int> parent(g.vertex_slots());
  for (int i = 0; i < g.vertex_slots(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = g.vertex_count();
  for (EdgeId e : g.edges()) {
    int a = find(g.origin(forward_dart(e))), b = find(g.origin(backward_dart(e)));
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

}  // namespace graphrep
