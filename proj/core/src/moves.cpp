#include "graphrep/moves.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace graphrep {

MapSummary summarize(const ControlledGraphMap& m, int zeta_terms) {
  MapSummary s;
  s.vertices = m.graph.vertex_count();
  s.edges = m.graph.edge_count();
  s.euler = s.vertices - s.edges;
  s.control_edges = static_cast<int>(control_edges(m.graph).size());
  if (zeta_terms > 0)
    s.zeta_head = zeta_truncated(m, control_mask(m.graph), zeta_terms - 1).coefficients;
  return s;
}

std::string to_string(const MoveRecord& r) {
  std::ostringstream os;
  os << r.kind;
  for (const auto& o : r.operands) os << " " << o;
  os << " | V " << r.before.vertices << "->" << r.after.vertices << " E " << r.before.edges
     << "->" << r.after.edges << " zeta (";
  for (std::size_t i = 0; i < r.after.zeta_head.size(); ++i)
    os << (i ? "," : "") << r.after.zeta_head[i];
  os << ")";
  if (!r.note.empty()) os << " " << r.note;
  return os.str();
}

EdgePath common_prefix(const ControlledRibbonGraph& g, const EdgePath& a, const EdgePath& b) {
  EdgePath p;
  p.anchor = path_start(g, a);
  std::size_t n = std::min(a.darts.size(), b.darts.size());
  for (std::size_t i = 0; i < n && a.darts[i] == b.darts[i]; ++i) p.darts.push_back(a.darts[i]);
  return p;
}

namespace {

// Union-find over vertex slots.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

bool touches_peripheral(const ControlledRibbonGraph& g, VertexId v) {
  for (Dart d : g.rotation(v))
    if (g.kind(edge_of(d)) == EdgeKind::Peripheral) return true;
  return false;
}

void purge_edge_from_images(ControlledGraphMap& m, EdgeId e) {
  for (EdgeId x : m.graph.edges()) {
    auto& p = m.edge_image[x];
    if (p.darts.empty()) continue;
    VertexId start = path_start(m.graph, p);
    auto it = std::remove_if(p.darts.begin(), p.darts.end(),
                             [&](Dart d) { return edge_of(d) == e; });
    if (it == p.darts.end()) continue;
    p.darts.erase(it, p.darts.end());
    p.anchor = start;
  }
}

// Merges the far end of e into its origin and deletes e and the far vertex.
void contract_structure(ControlledGraphMap& m, EdgeId e) {
  auto& g = m.graph;
  Dart f = forward_dart(e), b = backward_dart(e);
  VertexId v = g.origin(f), w = g.origin(b);
  purge_edge_from_images(m, e);
  for (EdgeId x : g.edges()) {
    auto& p = m.edge_image[x];
    if (p.darts.empty() && p.anchor == w) p.anchor = v;
  }
  for (auto& t : m.vertex_image)
    if (t == w) t = v;
  std::vector<Dart> rv = g.rotation(v), rw = g.rotation(w);
  auto rotate_after = [](const std::vector<Dart>& r, Dart d) {
    std::vector<Dart> out;
    auto it = std::find(r.begin(), r.end(), d);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    for (std::size_t k = 1; k < r.size(); ++k) out.push_back(r[(i + k) % r.size()]);
    return out;
  };
  std::vector<Dart> merged = rotate_after(rv, f);
  std::vector<Dart> tail = rotate_after(rw, b);
  merged.insert(merged.end(), tail.begin(), tail.end());
  g.set_rotation(w, {});
  for (Dart d : tail) g.set_origin(d, v);
  g.set_rotation(v, merged);
  g.kill_edge(e);
  g.set_origin(f, -1);
  g.set_origin(b, -1);
  if (g.vertex_marked(w)) g.set_vertex_marked(v, true);
  g.kill_vertex(w);
  for (EdgeId x : g.edges()) {
    auto& p = m.edge_image[x];
    if (!p.darts.empty()) p.anchor = g.origin(p.darts.front());
  }
}

bool is_adjacent_turn(const ControlledRibbonGraph& g, Dart a, Dart b) {
  return g.origin(a) == g.origin(b) && (g.succ(a) == b || g.succ(b) == a);
}

}  // namespace

std::vector<EdgeId> essential_edges(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  std::vector<char> in(g.edge_slots(), 0);
  for (EdgeId e : g.edges()) in[e] = 1;
  for (;;) {
    std::vector<char> next(g.edge_slots(), 0);
    for (EdgeId e : g.edges())
      if (in[e])
        for (Dart d : m.edge_image[e].darts) next[edge_of(d)] = 1;
    if (next == in) break;
    in = std::move(next);
  }
  std::vector<EdgeId> out;
  for (EdgeId e : g.edges())
    if (in[e]) out.push_back(e);
  return out;
}

std::vector<EdgeId> find_invariant_forest(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  std::vector<char> in(g.edge_slots(), 0);
  for (EdgeId e : g.edges()) in[e] = g.kind(e) == EdgeKind::Free ? 1 : 0;
  for (;;) {
    // Largest invariant subset.
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
    // Drop one edge lying on a cycle, the one with the longest image.
    EdgeId drop = -1;
    for (EdgeId e : g.edges()) {
      if (!in[e]) continue;
      Components uf(g.vertex_slots());
      for (EdgeId x : g.edges())
        if (in[x] && x != e) uf.unite(g.origin(forward_dart(x)), g.origin(backward_dart(x)));
      if (uf.find(g.origin(forward_dart(e))) != uf.find(g.origin(backward_dart(e)))) continue;
      if (drop < 0 || m.edge_image[e].size() >= m.edge_image[drop].size()) drop = e;
    }
    if (drop < 0) break;
    in[drop] = 0;
  }
  std::vector<EdgeId> out;
  for (EdgeId e : g.edges())
    if (in[e]) out.push_back(e);
  return out;
}

namespace inplace {

std::string tighten_images(ControlledGraphMap& m, bool* changed) {
  bool any = false;
  for (EdgeId e : m.graph.edges()) {
    EdgePath t = tighten_path(m.graph, m.edge_image[e]);
    if (t.darts.size() != m.edge_image[e].darts.size()) any = true;
    m.edge_image[e] = std::move(t);
  }
  if (changed) *changed = any;
  return "";
}

std::string homotope(ControlledGraphMap& m, VertexId v, const EdgePath& path) {
  auto& g = m.graph;
  if (v < 0 || v >= g.vertex_slots() || !g.vertex_alive(v)) return "unknown vertex";
  if (!is_continuous(g, path)) return "path not continuous";
  if (path_start(g, path) != m.vertex_image[v]) return "path does not start at image of vertex";
  if (path.darts.empty()) return "";
  if (g.is_control_vertex(v)) return "illegal at control vertex";
  EdgePath back = reversed(g, path);
  VertexId new_image = path_end(g, path);
  for (EdgeId e : g.edges()) {
    bool at_origin = g.origin(forward_dart(e)) == v;
    bool at_end = g.origin(backward_dart(e)) == v;
    if (!at_origin && !at_end) continue;
    EdgePath p = m.edge_image[e];
    EdgePath q;
    q.anchor = at_origin ? new_image : path_start(g, p);
    if (at_origin) q.darts = back.darts;
    q.darts.insert(q.darts.end(), p.darts.begin(), p.darts.end());
    if (at_end) q.darts.insert(q.darts.end(), path.darts.begin(), path.darts.end());
    m.edge_image[e] = tighten_path(g, q);
  }
  m.vertex_image[v] = new_image;
  return "";
}

std::string collapse(ControlledGraphMap& m, EdgeId e, bool allow_peripheral) {
  auto& g = m.graph;
  if (e < 0 || e >= g.edge_slots() || !g.edge_alive(e)) return "unknown edge";
  if (g.is_control(e)) return "control edge";
  if (g.kind(e) == EdgeKind::Peripheral && !allow_peripheral) return "peripheral edge";
  if (!m.edge_image[e].darts.empty()) return "image not trivial";
  if (g.is_loop(e)) return "loop edge";
  contract_structure(m, e);
  return "";
}

std::string split(ControlledGraphMap& m, VertexId v, const std::vector<Dart>& arc,
                  VertexId* new_vertex, EdgeId* new_edge) {
  auto& g = m.graph;
  if (v < 0 || v >= g.vertex_slots() || !g.vertex_alive(v)) return "unknown vertex";
  int val = g.valence(v);
  if (arc.empty() || static_cast<int>(arc.size()) >= val)
    return "arc must be a nonempty proper part of the cyclic order";
  for (Dart d : arc)
    if (d < 0 || d >= g.dart_slots() || !g.edge_alive(edge_of(d)) || g.origin(d) != v)
      return "arc dart not at vertex";
  for (std::size_t i = 0; i + 1 < arc.size(); ++i)
    if (g.succ(arc[i]) != arc[i + 1]) return "arc not contiguous";
  std::vector<char> moved(g.dart_slots() + 2, 0);
  for (Dart d : arc) moved[d] = 1;
  VertexId w = g.add_vertex(g.fresh_vertex_name("v"));
  EdgeId e0 = g.add_edge(g.fresh_edge_name("e"), EdgeKind::Free, v, w);
  Dart f0 = forward_dart(e0), b0 = backward_dart(e0);
  // Rotation at v: e0 takes the place of the arc.
  std::vector<Dart> rv;
  rv.push_back(f0);
  for (Dart d = g.succ(arc.back()); d != arc.front(); d = g.succ(d)) rv.push_back(d);
  std::vector<Dart> rw;
  rw.push_back(b0);
  rw.insert(rw.end(), arc.begin(), arc.end());
  for (Dart d : arc) g.set_origin(d, w);
  g.set_rotation(v, rv);
  g.set_rotation(w, rw);
  m.vertex_image.resize(g.vertex_slots());
  m.vertex_image[w] = m.vertex_image[v];
  m.edge_image.resize(g.edge_slots());
  for (EdgeId x : g.edges()) {
    auto& p = m.edge_image[x];
    if (p.darts.empty()) continue;
    std::vector<Dart> q;
    auto push = [&](Dart d) {
      if (!q.empty() && edge_of(d) == e0 && q.back() == g.rev(d))
        q.pop_back();
      else
        q.push_back(d);
    };
    for (Dart d : p.darts) {
      if (moved[d]) push(f0);
      push(d);
      if (moved[g.rev(d)]) push(b0);
    }
    p.darts = std::move(q);
    p.anchor = g.origin(p.darts.front());
  }
  m.edge_image[e0] = EdgePath::trivial(m.vertex_image[v]);
  if (new_vertex) *new_vertex = w;
  if (new_edge) *new_edge = e0;
  return "";
}

std::string collapse_forest(ControlledGraphMap& m, const std::vector<EdgeId>& forest) {
  auto& g = m.graph;
  std::vector<char> in(g.edge_slots(), 0);
  for (EdgeId e : forest) {
    if (e < 0 || e >= g.edge_slots() || !g.edge_alive(e)) return "unknown edge";
    if (g.is_control(e)) return "forest contains control edge";
    if (g.kind(e) == EdgeKind::Peripheral) return "forest contains peripheral edge";
    in[e] = 1;
  }
  Components uf(g.vertex_slots());
  for (EdgeId e : forest)
    if (!uf.unite(g.origin(forward_dart(e)), g.origin(backward_dart(e)))) return "not a forest";
  for (EdgeId e : forest)
    for (Dart d : m.edge_image[e].darts)
      if (!in[edge_of(d)]) return "not invariant";
  for (EdgeId e : forest) contract_structure(m, e);
  return "";
}

std::string fold(ControlledGraphMap& m, Dart a, Dart b, EdgeId* new_edge) {
  auto& g = m.graph;
  for (Dart d : {a, b})
    if (d < 0 || d >= g.dart_slots() || !g.edge_alive(edge_of(d))) return "unknown dart";
  if (edge_of(a) == edge_of(b) && !g.is_loop(edge_of(a))) return "turn uses both darts of one edge";
  if (!is_adjacent_turn(g, a, b)) return "darts do not form a turn";
  if (g.is_control(edge_of(a)) || g.is_control(edge_of(b))) return "control edge in turn";
  tighten_images(m);
  EdgePath beta = common_prefix(g, m.image(a), m.image(b));
  if (beta.darts.empty()) return "no common prefix";
  VertexId v = g.origin(a);
  if (g.valence(v) == 2) {
    if (new_edge) *new_edge = -1;
    return homotope(m, v, beta);
  }
  std::vector<Dart> arc = g.succ(a) == b ? std::vector<Dart>{a, b} : std::vector<Dart>{b, a};
  VertexId w = -1;
  EdgeId e0 = -1;
  std::string err = split(m, v, arc, &w, &e0);
  if (!err.empty()) return err;
  tighten_images(m);
  EdgePath beta2 = common_prefix(g, m.image(a), m.image(b));
  err = homotope(m, w, beta2);
  if (!err.empty()) return err;
  if (new_edge) *new_edge = e0;
  return "";
}

std::string valence3(ControlledGraphMap& m, VertexId v) {
  auto& g = m.graph;
  if (v < 0 || v >= g.vertex_slots() || !g.vertex_alive(v)) return "unknown vertex";
  if (g.valence(v) != 3) return "vertex not valence 3";
  if (g.is_control_vertex(v)) return "illegal at control vertex";
  tighten_images(m);
  const auto rot = g.rotation(v);
  for (std::size_t i = 0; i < rot.size(); ++i) {
    Dart a = rot[i], b = rot[(i + 1) % rot.size()];
    Dart da = m.derivative(a);
    if (da == kNoDart || da != m.derivative(b)) continue;
    return homotope(m, v, common_prefix(g, m.image(a), m.image(b)));
  }
  return "no bad turn at vertex";
}

std::string tidy_step(ControlledGraphMap& m, std::vector<std::string>* operands) {
  auto& g = m.graph;
  bool changed = false;
  tighten_images(m, &changed);
  if (changed) return "tighten-images";
  for (VertexId v : g.vertices()) {
    if (g.valence(v) == 0 || g.is_control_vertex(v) || g.vertex_marked(v) ||
        touches_peripheral(g, v))
      continue;
    Dart d0 = kNoDart;
    bool constant = true;
    for (Dart d : g.rotation(v)) {
      Dart dd = m.derivative(d);
      if (dd == kNoDart || (d0 != kNoDart && dd != d0)) {
        constant = false;
        break;
      }
      d0 = dd;
    }
    if (!constant || d0 == kNoDart) continue;
    if (operands) *operands = {g.vertex_name(v), g.dart_name(d0)};
    homotope(m, v, make_path(g, {d0}));
    return "tighten-vertex";
  }
  auto forest = find_invariant_forest(m);
  if (!forest.empty()) {
    if (operands) {
      operands->clear();
      for (EdgeId e : forest) operands->push_back(g.edge_name(e));
    }
    collapse_forest(m, forest);
    return "collapse-forest";
  }
  return "";
}

void contract(ControlledGraphMap& m, EdgeId e) { contract_structure(m, e); }

void restrict_essential(ControlledGraphMap& m) {
  auto& g = m.graph;
  std::vector<char> keep(g.edge_slots(), 0);
  for (EdgeId e : essential_edges(m)) keep[e] = 1;
  for (EdgeId e : g.edges())
    if (!keep[e]) {
      g.kill_edge(e);
      g.set_origin(forward_dart(e), -1);
      g.set_origin(backward_dart(e), -1);
    }
  std::vector<char> used(g.vertex_slots(), 0);
  for (EdgeId e : g.edges()) {
    used[g.origin(forward_dart(e))] = 1;
    used[g.origin(backward_dart(e))] = 1;
  }
  bool any_edge = g.edge_count() > 0;
  for (VertexId v : g.vertices())
    if (any_edge && !used[v]) g.kill_vertex(v);
}

}  // namespace inplace

namespace {

MoveResult finish(const ControlledGraphMap& input, ControlledGraphMap work, std::string err,
                  std::string kind, std::vector<std::string> operands,
                  std::vector<std::string> created = {}) {
  MoveResult r;
  if (!err.empty()) {
    r.map = input;
    r.error = std::move(err);
    return r;
  }
  r.map = compact(work);
  MoveRecord rec;
  rec.kind = std::move(kind);
  rec.operands = std::move(operands);
  rec.before = summarize(input);
  rec.after = summarize(r.map);
  r.records.push_back(std::move(rec));
  r.created = std::move(created);
  return r;
}

}  // namespace

MoveResult tighten_edge_images(const ControlledGraphMap& g) {
  ControlledGraphMap w = g;
  inplace::tighten_images(w);
  return finish(g, std::move(w), "", "tighten-images", {});
}

MoveResult vertex_homotopy(const ControlledGraphMap& g, VertexId v, const EdgePath& path) {
  ControlledGraphMap w = g;
  std::string err = inplace::homotope(w, v, path);
  std::vector<std::string> ops;
  if (err.empty()) ops = {g.graph.vertex_name(v), path_to_string(g.graph, path)};
  return finish(g, std::move(w), err, "vertex-homotopy", ops);
}

MoveResult collapse_edge(const ControlledGraphMap& g, EdgeId e, bool allow_peripheral) {
  ControlledGraphMap w = g;
  std::string err = inplace::collapse(w, e, allow_peripheral);
  std::vector<std::string> ops;
  if (err.empty()) ops = {g.graph.edge_name(e)};
  return finish(g, std::move(w), err, "collapse-edge", ops);
}

MoveResult split_vertex(const ControlledGraphMap& g, VertexId v, const std::vector<Dart>& arc) {
  ControlledGraphMap w = g;
  VertexId nv = -1;
  EdgeId ne = -1;
  std::string err = inplace::split(w, v, arc, &nv, &ne);
  std::vector<std::string> ops, created;
  if (err.empty()) {
    ops.push_back(g.graph.vertex_name(v));
    for (Dart d : arc) ops.push_back(g.graph.dart_name(d));
    created = {w.graph.vertex_name(nv), w.graph.edge_name(ne)};
  }
  return finish(g, std::move(w), err, "split-vertex", ops, created);
}

MoveResult collapse_invariant_forest(const ControlledGraphMap& g,
                                     const std::vector<EdgeId>& forest) {
  ControlledGraphMap w = g;
  std::string err = inplace::collapse_forest(w, forest);
  std::vector<std::string> ops;
  if (err.empty())
    for (EdgeId e : forest) ops.push_back(g.graph.edge_name(e));
  return finish(g, std::move(w), err, "collapse-forest", ops);
}

MoveResult fold_turn(const ControlledGraphMap& g, Dart first, Dart second) {
  ControlledGraphMap w = g;
  EdgeId ne = -1;
  std::string err = inplace::fold(w, first, second, &ne);
  std::vector<std::string> ops, created;
  if (err.empty()) {
    ops = {g.graph.dart_name(first), g.graph.dart_name(second)};
    if (ne >= 0) created = {w.graph.edge_name(ne)};
  }
  return finish(g, std::move(w), err, "fold", ops, created);
}

MoveResult valence3_homotopy(const ControlledGraphMap& g, VertexId v) {
  ControlledGraphMap w = g;
  std::string err = inplace::valence3(w, v);
  std::vector<std::string> ops;
  if (err.empty()) ops = {g.graph.vertex_name(v)};
  return finish(g, std::move(w), err, "valence3-homotopy", ops);
}

MoveResult tidy(const ControlledGraphMap& g) {
  MoveResult r;
  ControlledGraphMap w = g;
  refresh_peripheral_kinds(w);
  ControlledGraphMap before = compact(w);
  for (int guard = 0; guard < 100000; ++guard) {
    std::vector<std::string> ops;
    std::string kind = inplace::tidy_step(w, &ops);
    if (kind.empty()) break;
    ControlledGraphMap after = compact(w);
    MoveRecord rec;
    rec.kind = kind;
    rec.operands = ops;
    rec.before = summarize(before, 0);
    rec.after = summarize(after, 0);
    r.records.push_back(std::move(rec));
    before = std::move(after);
  }
  r.map = compact(w);
  return r;
}

MoveResult restrict_to_essential(const ControlledGraphMap& g) {
  ControlledGraphMap w = g;
  inplace::restrict_essential(w);
  return finish(g, std::move(w), "", "restrict-essential", {});
}

bool is_tidy(const ControlledGraphMap& g) {
  ControlledGraphMap w = g;
  return inplace::tidy_step(w, nullptr).empty();
}

}  // namespace graphrep

namespace graphrep {

ControlledGraphMap random_representation(const ControlledGraphMap& g, std::uint64_t seed,
                                         int steps) {
  ControlledGraphMap m = g;
  auto& gr = m.graph;
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (int s = 0; s < steps; ++s) {
    std::vector<VertexId> vs;
    for (VertexId v : gr.vertices()) vs.push_back(v);
    VertexId v = vs[pick(vs.size())];
    const int val = gr.valence(v);
    if (val >= 3 && pick(2) == 0) {
      const auto rot = gr.rotation(v);
      std::size_t start = pick(rot.size());
      std::size_t len = 2 + pick(static_cast<std::size_t>(val) - 2);
      std::vector<Dart> arc;
      bool fixed = false;  // control and peripheral darts stay put
      for (std::size_t i = 0; i < len; ++i) {
        arc.push_back(rot[(start + i) % rot.size()]);
        fixed = fixed || gr.kind(edge_of(arc.back())) != EdgeKind::Free;
      }
      if (!fixed) {
        inplace::split(m, v, arc, nullptr, nullptr);
        continue;
      }
    }
    // Corners before rot[k] whose face is not bounded by peripheral darts only.
    auto rot = gr.rotation(v);
    std::vector<std::size_t> corners;
    for (std::size_t k = 0; k < rot.size(); ++k) {
      bool puncture = true;
      Dart x = rot[k];
      do {
        puncture = puncture && gr.kind(edge_of(x)) == EdgeKind::Peripheral;
        x = gr.succ(gr.rev(x));
      } while (x != rot[k] && puncture);
      if (!puncture) corners.push_back(k);
    }
    if (!rot.empty() && corners.empty()) continue;
    VertexId w = gr.add_vertex(gr.fresh_vertex_name("v"));
    EdgeId e = gr.add_edge(gr.fresh_edge_name("e"), EdgeKind::Free, v, w);
    rot.insert(rot.begin() + static_cast<long>(rot.empty() ? 0 : corners[pick(corners.size())]),
               forward_dart(e));
    gr.set_rotation(v, rot);
    gr.set_rotation(w, {backward_dart(e)});
    m.vertex_image.resize(gr.vertex_slots());
    m.vertex_image[w] = m.vertex_image[v];
    m.edge_image.resize(gr.edge_slots());
    m.edge_image[e] = EdgePath::trivial(m.vertex_image[v]);
  }
  return compact(m);
}

}  // namespace graphrep
