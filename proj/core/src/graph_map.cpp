#include "graphrep/graph_map.hpp"

#include <algorithm>
#include <sstream>

namespace graphrep {

EdgePath ControlledGraphMap::image(Dart d) const {
  const EdgePath& p = edge_image[edge_of(d)];
  if (!is_backward(d)) return p;
  return reversed(graph, p);
}

void ControlledGraphMap::set_image(Dart d, const EdgePath& p) {
  if (is_backward(d))
    edge_image[edge_of(d)] = reversed(graph, p);
  else
    edge_image[edge_of(d)] = p;
}

Dart ControlledGraphMap::derivative(Dart d) const {
  const EdgePath& p = edge_image[edge_of(d)];
  if (p.darts.empty()) return kNoDart;
  return is_backward(d) ? graph.rev(p.darts.back()) : p.darts.front();
}

ControlledGraphMap identity_map(const ControlledRibbonGraph& g) {
  ControlledGraphMap m;
  m.graph = g;
  m.vertex_image.resize(g.vertex_slots());
  for (VertexId v = 0; v < g.vertex_slots(); ++v) m.vertex_image[v] = v;
  m.edge_image.resize(g.edge_slots());
  for (EdgeId e = 0; e < g.edge_slots(); ++e)
    m.edge_image[e] = EdgePath{{forward_dart(e)}, g.origin(forward_dart(e))};
  return m;
}

ControlledGraphMap compact(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  std::vector<VertexId> vmap(g.vertex_slots(), -1);
  std::vector<EdgeId> emap(g.edge_slots(), -1);
  ControlledGraphMap out;
  for (VertexId v : g.vertices()) {
    vmap[v] = out.graph.add_vertex(g.vertex_name(v));
    out.graph.set_vertex_marked(vmap[v], g.vertex_marked(v));
  }
  for (EdgeId e : g.edges()) {
    emap[e] = out.graph.add_edge(g.edge_name(e), g.kind(e),
                                 vmap[g.origin(forward_dart(e))],
                                 vmap[g.origin(backward_dart(e))], g.marked_point(e));
  }
  auto dmap = [&](Dart d) { return 2 * emap[edge_of(d)] + (d & 1); };
  for (VertexId v : g.vertices()) {
    std::vector<Dart> rot;
    for (Dart d : g.rotation(v)) rot.push_back(dmap(d));
    out.graph.set_rotation(vmap[v], std::move(rot));
  }
  out.vertex_image.resize(out.graph.vertex_slots());
  for (VertexId v : g.vertices()) {
    VertexId t = m.vertex_image[v];
    if (t < 0 || vmap[t] < 0) throw Error("vertex image refers to a deleted vertex");
    out.vertex_image[vmap[v]] = vmap[t];
  }
  out.edge_image.resize(out.graph.edge_slots());
  for (EdgeId e : g.edges()) {
    EdgePath p;
    for (Dart d : m.edge_image[e].darts) {
      if (emap[edge_of(d)] < 0) throw Error("edge image refers to a deleted edge");
      p.darts.push_back(dmap(d));
    }
    p.anchor = p.darts.empty() ? vmap[m.edge_image[e].anchor]
                               : out.graph.origin(p.darts.front());
    out.edge_image[emap[e]] = std::move(p);
  }
  return out;
}

EdgePath apply_map(const ControlledGraphMap& g, const EdgePath& p) {
  EdgePath r;
  r.anchor = p.darts.empty() ? g.vertex_image[p.anchor]
                             : g.vertex_image[g.graph.origin(p.darts.front())];
  for (Dart d : p.darts) {
    EdgePath im = g.image(d);
    r.darts.insert(r.darts.end(), im.darts.begin(), im.darts.end());
  }
  return r;
}

EdgePath apply_map_tight(const ControlledGraphMap& g, const EdgePath& p) {
  return tighten_path(g.graph, apply_map(g, p));
}

namespace {

// Lexicographic key of an image germ: raw position of the first dart at the
// base vertex, then positions relative to the incoming direction.
std::vector<int> germ_key(const ControlledRibbonGraph& g, const EdgePath& p) {
  std::vector<int> key;
  for (std::size_t i = 0; i < p.darts.size(); ++i) {
    Dart d = p.darts[i];
    if (i == 0) {
      key.push_back(g.position(d));
    } else {
      Dart in = g.rev(p.darts[i - 1]);
      int val = g.valence(g.origin(d));
      int rel = (g.position(d) - g.position(in) - 1 + 2 * val) % val;
      if (d == in) rel = val - 1;
      key.push_back(rel);
    }
  }
  return key;
}

// -1, 0, +1 with prefixes treated as ties.
int germ_compare(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

}  // namespace

namespace {

// Germ keys of a map that reverses orientation compare like mirrored keys.
std::vector<int> mirrored(const ControlledRibbonGraph& g, const EdgePath& p, std::vector<int> key) {
  for (std::size_t i = 0; i < key.size(); ++i) {
    int val = g.valence(g.origin(p.darts[i]));
    if (i == 0)
      key[i] = -key[i];
    else if (key[i] != val - 1)
      key[i] = val - 2 - key[i];
  }
  return key;
}

bool embeddable_with(const ControlledGraphMap& m, bool reversing, std::string* witness) {
  const auto& g = m.graph;
  for (VertexId v : g.vertices()) {
    std::vector<std::vector<int>> keys;
    for (Dart d : g.rotation(v)) {
      EdgePath im = m.image(d);
      if (im.darts.empty()) continue;
      auto key = germ_key(g, im);
      keys.push_back(reversing ? mirrored(g, im, std::move(key)) : std::move(key));
    }
    if (keys.size() < 3) continue;
    int descents = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& a = keys[i];
      const auto& b = keys[(i + 1) % keys.size()];
      if (germ_compare(a, b) > 0) ++descents;
    }
    if (descents > 1) {
      if (witness) *witness = g.vertex_name(v);
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_embeddable(const ControlledGraphMap& m, std::string* witness) {
  if (embeddable_with(m, false, witness)) return true;
  return embeddable_with(m, true, nullptr);
}

ValidationReport validate_map(const ControlledGraphMap& m) {
  ValidationReport r = validate_graph(m.graph);
  if (!r.ok()) return r;
  const auto& g = m.graph;
  if (static_cast<int>(m.vertex_image.size()) != g.vertex_slots() ||
      static_cast<int>(m.edge_image.size()) != g.edge_slots()) {
    r.add("map size mismatch", "vertex or edge image table has wrong size");
    return r;
  }
  for (VertexId v : g.vertices()) {
    VertexId t = m.vertex_image[v];
    if (t < 0 || t >= g.vertex_slots() || !g.vertex_alive(t))
      r.add("vertex image undefined", g.vertex_name(v));
  }
  if (!r.ok()) return r;
  for (EdgeId e : g.edges()) {
    const EdgePath& p = m.edge_image[e];
    const std::string& name = g.edge_name(e);
    bool darts_ok = true;
    for (Dart d : p.darts)
      if (d < 0 || d >= g.dart_slots() || !g.edge_alive(edge_of(d))) darts_ok = false;
    if (!darts_ok) {
      r.add("image names unknown edge", name);
      continue;
    }
    if (!is_continuous(g, p)) {
      r.add("image not continuous", name);
      continue;
    }
    VertexId from = m.vertex_image[g.origin(forward_dart(e))];
    VertexId to = m.vertex_image[g.origin(backward_dart(e))];
    if (path_start(g, p) != from)
      r.add("origin compatibility", name + " image does not start at image of its origin");
    if (path_end(g, p) != to)
      r.add("end compatibility", name + " image does not end at image of its end");
    if (g.is_control(e)) {
      if (p.darts.size() != 1 || !g.is_control(edge_of(p.darts[0])))
        r.add("control discipline", name + " must map to a single control edge");
    }
    if (g.kind(e) == EdgeKind::Peripheral) {
      for (Dart d : p.darts)
        if (g.kind(edge_of(d)) != EdgeKind::Peripheral)
          r.add("peripheral invariance", name + " leaves the peripheral subgraph");
    }
  }
  if (!r.ok()) return r;
  std::string where;
  if (!is_embeddable(m, &where)) r.add("not embeddable", "cyclic order broken at " + where);
  return r;
}

PeripheralSubgraph detect_peripheral_subgraph(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  PeripheralSubgraph out;
  std::vector<std::vector<Dart>> loops;
  for (auto& loop : trace_boundary_loops(g)) {
    bool ok = true;
    std::vector<VertexId> vs;
    for (Dart d : loop) {
      if (g.is_control(edge_of(d))) ok = false;
      vs.push_back(g.origin(d));
    }
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) ok = false;
    if (ok) loops.push_back(std::move(loop));
  }
  std::vector<char> alive(loops.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<char> in(g.edge_slots(), 0);
    for (std::size_t i = 0; i < loops.size(); ++i)
      if (alive[i])
        for (Dart d : loops[i]) in[edge_of(d)] = 1;
    for (std::size_t i = 0; i < loops.size(); ++i) {
      if (!alive[i]) continue;
      for (Dart d : loops[i]) {
        for (Dart x : m.edge_image[edge_of(d)].darts)
          if (!in[edge_of(x)]) {
            alive[i] = 0;
            changed = true;
            break;
          }
        if (!alive[i]) break;
      }
    }
  }
  std::vector<char> in(g.edge_slots(), 0);
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (alive[i]) {
      out.loops.push_back(loops[i]);
      for (Dart d : loops[i]) in[edge_of(d)] = 1;
    }
  for (EdgeId e : g.edges())
    if (in[e]) out.edges.push_back(e);
  std::vector<char> pre = in;
  for (bool changed = true; changed;) {
    changed = false;
    for (EdgeId e : g.edges()) {
      if (pre[e] || m.edge_image[e].darts.empty()) continue;
      bool inside = true;
      for (Dart x : m.edge_image[e].darts)
        if (!pre[edge_of(x)]) inside = false;
      if (inside) {
        pre[e] = 1;
        changed = true;
      }
    }
  }
  for (EdgeId e : g.edges())
    if (pre[e]) out.pre_peripheral.push_back(e);
  return out;
}

void refresh_peripheral_kinds(ControlledGraphMap& m) {
  auto& g = m.graph;
  for (EdgeId e : g.edges())
    if (g.kind(e) == EdgeKind::Peripheral) g.set_kind(e, EdgeKind::Free);
  for (EdgeId e : detect_peripheral_subgraph(m).edges) g.set_kind(e, EdgeKind::Peripheral);
}

std::vector<char> forward_closure(const ControlledGraphMap& m,
                                  const std::vector<EdgeId>& start) {
  std::vector<char> in(m.graph.edge_slots(), 0);
  std::vector<EdgeId> stack;
  for (EdgeId e : start)
    if (!in[e]) {
      in[e] = 1;
      stack.push_back(e);
    }
  while (!stack.empty()) {
    EdgeId e = stack.back();
    stack.pop_back();
    for (Dart d : m.edge_image[e].darts) {
      EdgeId x = edge_of(d);
      if (!in[x]) {
        in[x] = 1;
        stack.push_back(x);
      }
    }
  }
  return in;
}

std::vector<EdgeId> control_edges(const ControlledRibbonGraph& g) {
  std::vector<EdgeId> out;
  for (EdgeId e : g.edges())
    if (g.is_control(e)) out.push_back(e);
  return out;
}

std::vector<EdgeId> free_edges(const ControlledRibbonGraph& g) {
  std::vector<EdgeId> out;
  for (EdgeId e : g.edges())
    if (!g.is_control(e)) out.push_back(e);
  return out;
}

std::string describe_map(const ControlledGraphMap& m) {
  std::ostringstream os;
  for (EdgeId e : m.graph.edges())
    os << m.graph.edge_name(e) << " -> " << path_to_string(m.graph, m.edge_image[e]) << "\n";
  return os.str();
}

}  // namespace graphrep
