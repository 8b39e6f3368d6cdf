#include <algorithm>
#include <map>
#include <numeric>

#include "graphrep/optimize.hpp"

namespace graphrep {

namespace {

struct Corner {
  int face = -1;
  int index = -1;
};

// Faces of the ribbon subgraph H (rotation induced from G), with the outside
// darts attached at each corner.
struct Frontier {
  std::vector<std::vector<Dart>> faces;                // darts h_0..h_{m-1}
  std::vector<std::vector<std::vector<Dart>>> attach;  // per face, per corner
  std::map<Dart, Corner> corner_of_outside;            // outside dart -> corner
  std::map<Dart, Corner> corner_of_face_dart;          // h_i -> corner i (its origin)
};

Dart succ_in(const ControlledRibbonGraph& g, const std::vector<char>& in, Dart d,
             std::vector<Dart>* skipped) {
  Dart x = g.succ(d);
  while (!in[edge_of(x)]) {
    if (skipped) skipped->push_back(x);
    x = g.succ(x);
  }
  return x;
}

Frontier trace_frontier(const ControlledRibbonGraph& g, const std::vector<char>& in) {
  Frontier f;
  std::vector<char> used(g.dart_slots(), 0);
  for (EdgeId e : g.edges()) {
    if (!in[e]) continue;
    for (Dart start : {forward_dart(e), backward_dart(e)}) {
      if (used[start]) continue;
      std::vector<Dart> face;
      std::vector<std::vector<Dart>> att;
      Dart d = start;
      while (!used[d]) {
        used[d] = 1;
        face.push_back(d);
        std::vector<Dart> skipped;
        d = succ_in(g, in, g.rev(d), &skipped);
        att.push_back(std::move(skipped));
      }
      // att[i] holds darts at the corner after face[i], i.e. before face[i+1].
      int k = static_cast<int>(f.faces.size());
      int m = static_cast<int>(face.size());
      std::vector<std::vector<Dart>> by_corner(m);
      for (int i = 0; i < m; ++i) by_corner[(i + 1) % m] = att[i];
      for (int i = 0; i < m; ++i) {
        f.corner_of_face_dart[face[i]] = {k, i};
        for (Dart x : by_corner[i]) f.corner_of_outside[x] = {k, i};
      }
      f.faces.push_back(std::move(face));
      f.attach.push_back(std::move(by_corner));
    }
  }
  return f;
}

bool invariant_set(const ControlledGraphMap& m, const std::vector<char>& in) {
  for (EdgeId e : m.graph.edges())
    if (in[e])
      for (Dart d : m.edge_image[e].darts)
        if (!in[edge_of(d)]) return false;
  return true;
}

std::vector<Dart> tighten_darts(const ControlledRibbonGraph& g, const std::vector<Dart>& w) {
  std::vector<Dart> out;
  for (Dart d : w) {
    if (!out.empty() && out.back() == g.rev(d))
      out.pop_back();
    else
      out.push_back(d);
  }
  return out;
}

class FrontierSplit {
 public:
  FrontierSplit(const ControlledGraphMap& m, const std::vector<char>& in)
      : m_(m), g_(m.graph), in_(in), fr_(trace_frontier(m.graph, in)) {
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      bool any = false;
      for (const auto& a : fr_.attach[k]) any = any || !a.empty();
      kept_.push_back(any);
    }
  }

  ControlledGraphMap build(std::vector<std::vector<std::string>>* loop_names) {
    ControlledGraphMap out;
    auto& h = out.graph;
    std::vector<VertexId> vmap(g_.vertex_slots(), -1);
    std::vector<char> h_vertex(g_.vertex_slots(), 0);
    for (EdgeId e : g_.edges())
      if (in_[e]) {
        h_vertex[g_.origin(forward_dart(e))] = 1;
        h_vertex[g_.origin(backward_dart(e))] = 1;
      }
    for (VertexId v : g_.vertices())
      if (!h_vertex[v]) vmap[v] = h.add_vertex(g_.vertex_name(v));
    corner_vertex_.resize(fr_.faces.size());
    loop_edge_.resize(fr_.faces.size());
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      if (!kept_[k]) continue;
      int n = static_cast<int>(fr_.faces[k].size());
      for (int i = 0; i < n; ++i)
        corner_vertex_[k].push_back(h.add_vertex(h.fresh_vertex_name("c" + std::to_string(k) + "_")));
    }
    std::vector<EdgeId> emap(g_.edge_slots(), -1);
    auto origin_of = [&](Dart d) -> VertexId {
      VertexId v = g_.origin(d);
      if (!h_vertex[v]) return vmap[v];
      auto it = fr_.corner_of_outside.find(d);
      if (it == fr_.corner_of_outside.end()) throw Error("outside dart without corner");
      return corner_vertex_[it->second.face][it->second.index];
    };
    for (EdgeId e : g_.edges()) {
      if (in_[e]) continue;
      emap[e] = h.add_edge(g_.edge_name(e), g_.kind(e), origin_of(forward_dart(e)),
                           origin_of(backward_dart(e)), g_.marked_point(e));
    }
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      if (!kept_[k]) continue;
      int n = static_cast<int>(fr_.faces[k].size());
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) {
        std::string name = h.fresh_edge_name("p" + std::to_string(k) + "_");
        names.push_back(name);
        loop_edge_[k].push_back(h.add_edge(name, EdgeKind::Peripheral, corner_vertex_[k][i],
                                           corner_vertex_[k][(i + 1) % n]));
      }
      if (loop_names) loop_names->push_back(names);
    }
    auto dmap = [&](Dart d) { return 2 * emap[edge_of(d)] + (d & 1); };
    for (VertexId v : g_.vertices()) {
      if (h_vertex[v]) continue;
      std::vector<Dart> rot;
      for (Dart d : g_.rotation(v)) rot.push_back(dmap(d));
      h.set_rotation(vmap[v], rot);
    }
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      if (!kept_[k]) continue;
      int n = static_cast<int>(fr_.faces[k].size());
      for (int i = 0; i < n; ++i) {
        std::vector<Dart> rot;
        rot.push_back(backward_dart(loop_edge_[k][(i + n - 1) % n]));
        for (Dart a : fr_.attach[k][i]) rot.push_back(dmap(a));
        rot.push_back(forward_dart(loop_edge_[k][i]));
        h.set_rotation(corner_vertex_[k][i], rot);
      }
    }
    out.vertex_image.assign(h.vertex_slots(), -1);
    out.edge_image.assign(h.edge_slots(), EdgePath{});
    // Corner images from the images of attached outside darts.
    corner_image_.assign(fr_.faces.size(), {});
    for (std::size_t k = 0; k < fr_.faces.size(); ++k)
      if (kept_[k]) corner_image_[k].assign(fr_.faces[k].size(), {-1, -1});
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      if (!kept_[k]) continue;
      for (std::size_t i = 0; i < fr_.faces[k].size(); ++i)
        for (Dart a : fr_.attach[k][i]) {
          Corner c = image_corner_of_start(a);
          if (c.face >= 0) {
            corner_image_[k][i] = c;
            break;
          }
        }
    }
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      if (!kept_[k]) continue;
      int n = static_cast<int>(fr_.faces[k].size());
      for (int i = 0; i < n; ++i) {
        if (corner_image_[k][i].face >= 0) continue;
        for (int s = 1; s <= n; ++s)
          if (corner_image_[k][(i + s) % n].face >= 0) {
            corner_image_[k][i] = corner_image_[k][(i + s) % n];
            break;
          }
      }
    }
    for (VertexId v : g_.vertices()) {
      if (h_vertex[v]) continue;
      VertexId t = m_.vertex_image[v];
      if (h_vertex[t]) throw Error("outside vertex maps into the reducing subgraph");
      out.vertex_image[vmap[v]] = vmap[t];
    }
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      if (!kept_[k]) continue;
      for (std::size_t i = 0; i < fr_.faces[k].size(); ++i) {
        Corner c = corner_image_[k][i];
        if (c.face < 0 || !kept_[c.face]) throw Error("frontier corner has no image");
        out.vertex_image[corner_vertex_[k][i]] = corner_vertex_[c.face][c.index];
      }
    }
    // Outside edges: replace each run in H by the matching frontier arc.
    for (EdgeId e : g_.edges()) {
      if (in_[e]) continue;
      Dart fd = forward_dart(e);
      const auto& w = m_.edge_image[e].darts;
      std::vector<Dart> res;
      std::size_t i = 0;
      VertexId cur = out.vertex_image[out.graph.origin(dmap(fd))];
      Corner cur_corner = corner_at(out, cur);
      while (i < w.size()) {
        if (!in_[edge_of(w[i])]) {
          res.push_back(dmap(w[i]));
          cur_corner = corner_after_outside(w[i]);
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < w.size() && in_[edge_of(w[j])]) ++j;
        std::vector<Dart> run(w.begin() + i, w.begin() + j);
        Corner to = j < w.size() ? corner_before_outside(w[j])
                                 : corner_at(out, out.vertex_image[out.graph.origin(dmap(g_.rev(fd)))]);
        auto arc = match_arc(cur_corner, to, run);
        if (!arc) throw Error("H-run of " + g_.edge_name(e) + " is not a frontier arc");
        res.insert(res.end(), arc->begin(), arc->end());
        cur_corner = to;
        i = j;
      }
      EdgePath p;
      p.darts = tighten_darts(h, res);
      p.anchor = out.vertex_image[out.graph.origin(dmap(fd))];
      out.edge_image[emap[e]] = std::move(p);
    }
    // Frontier loop edges: arcs between consecutive corner images.
    for (std::size_t k = 0; k < fr_.faces.size(); ++k) {
      if (!kept_[k]) continue;
      int n = static_cast<int>(fr_.faces[k].size());
      for (int i = 0; i < n; ++i) {
        std::vector<Dart> run;
        for (Dart d : m_.image(fr_.faces[k][i]).darts) run.push_back(d);
        auto arc = match_arc(corner_image_[k][i], corner_image_[k][(i + 1) % n], run);
        if (!arc) throw Error("frontier loop image is not a frontier arc");
        EdgePath p;
        p.darts = *arc;
        p.anchor = corner_vertex_[corner_image_[k][i].face][corner_image_[k][i].index];
        out.edge_image[loop_edge_[k][i]] = std::move(p);
      }
    }
    return out;
  }

 private:
  Corner corner_at(const ControlledGraphMap& out, VertexId v) const {
    for (std::size_t k = 0; k < corner_vertex_.size(); ++k)
      for (std::size_t i = 0; i < corner_vertex_[k].size(); ++i)
        if (corner_vertex_[k][i] == v) return {static_cast<int>(k), static_cast<int>(i)};
    (void)out;
    return {-1, -1};
  }

  // Corner at which the outside dart d leaves H.
  Corner corner_before_outside(Dart d) const {
    auto it = fr_.corner_of_outside.find(d);
    return it == fr_.corner_of_outside.end() ? Corner{-1, -1} : it->second;
  }
  // Corner at which the outside dart d arrives in H.
  Corner corner_after_outside(Dart d) const { return corner_before_outside(g_.rev(d)); }

  // Corner image for the outside dart a at an H vertex: determined by the
  // first outside dart of g(a) and the H-run before it.
  Corner image_corner_of_start(Dart a) const {
    const EdgePath im = m_.image(a);
    std::size_t j = 0;
    while (j < im.darts.size() && in_[edge_of(im.darts[j])]) ++j;
    Corner to;
    if (j < im.darts.size()) {
      to = corner_before_outside(im.darts[j]);
    } else {
      return {-1, -1};
    }
    if (to.face < 0) return {-1, -1};
    std::vector<Dart> run(im.darts.begin(), im.darts.begin() + j);
    // Find a corner c on the same face whose arc to `to` matches the run.
    int n = static_cast<int>(fr_.faces[to.face].size());
    for (int s = 0; s < n; ++s) {
      Corner c{to.face, s};
      if (match_arc(c, to, run)) return c;
    }
    return {-1, -1};
  }

  std::vector<Dart> arc_darts_in_h(Corner from, Corner to, bool forward, int laps) const {
    const auto& face = fr_.faces[from.face];
    int n = static_cast<int>(face.size());
    std::vector<Dart> w;
    if (forward) {
      int steps = ((to.index - from.index) % n + n) % n + laps * n;
      for (int s = 0; s < steps; ++s) w.push_back(face[(from.index + s) % n]);
    } else {
      int steps = ((from.index - to.index) % n + n) % n + laps * n;
      for (int s = 0; s < steps; ++s) w.push_back(g_.rev(face[((from.index - 1 - s) % n + n) % n]));
    }
    return w;
  }

  std::vector<Dart> arc_darts_out(Corner from, Corner to, bool forward, int laps) const {
    const auto& loop = loop_edge_[from.face];
    int n = static_cast<int>(loop.size());
    std::vector<Dart> w;
    if (forward) {
      int steps = ((to.index - from.index) % n + n) % n + laps * n;
      for (int s = 0; s < steps; ++s) w.push_back(forward_dart(loop[(from.index + s) % n]));
    } else {
      int steps = ((from.index - to.index) % n + n) % n + laps * n;
      for (int s = 0; s < steps; ++s)
        w.push_back(backward_dart(loop[((from.index - 1 - s) % n + n) % n]));
    }
    return w;
  }

  std::optional<std::vector<Dart>> match_arc(Corner from, Corner to,
                                             const std::vector<Dart>& run) const {
    if (from.face < 0 || to.face < 0 || from.face != to.face || !kept_[from.face])
      return std::nullopt;
    std::vector<Dart> target = tighten_darts(g_, run);
    for (int laps = 0; laps < 3; ++laps)
      for (bool fwd : {true, false}) {
        if (tighten_darts(g_, arc_darts_in_h(from, to, fwd, laps)) == target)
          return arc_darts_out(from, to, fwd, laps);
      }
    return std::nullopt;
  }

  const ControlledGraphMap& m_;
  const ControlledRibbonGraph& g_;
  std::vector<char> in_;
  Frontier fr_;
  std::vector<char> kept_;
  std::vector<std::vector<VertexId>> corner_vertex_;
  std::vector<std::vector<EdgeId>> loop_edge_;
  std::vector<std::vector<Corner>> corner_image_;
};

std::vector<char> mask_of(const ControlledRibbonGraph& g, const std::vector<EdgeId>& h) {
  std::vector<char> in(g.edge_slots(), 0);
  for (EdgeId e : h) {
    if (e < 0 || e >= g.edge_slots() || !g.edge_alive(e)) throw Error("H violates preconditions");
    in[e] = 1;
  }
  return in;
}

std::vector<std::vector<EdgeId>> components_of(const ControlledRibbonGraph& g,
                                               const std::vector<char>& in) {
  std::vector<int> parent(g.vertex_slots());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e : g.edges())
    if (in[e]) parent[find(g.origin(forward_dart(e)))] = find(g.origin(backward_dart(e)));
  std::map<int, std::vector<EdgeId>> comps;
  for (EdgeId e : g.edges())
    if (in[e]) comps[find(g.origin(forward_dart(e)))].push_back(e);
  std::vector<std::vector<EdgeId>> out;
  for (auto& [r, es] : comps) out.push_back(es);
  return out;
}

ControlledGraphMap restrict_power(const ControlledGraphMap& m, const std::vector<EdgeId>& comp) {
  const auto& g = m.graph;
  std::vector<char> in(g.edge_slots(), 0);
  for (EdgeId e : comp) in[e] = 1;
  int period = 1;
  for (;; ++period) {
    EdgePath im = m.edge_image[comp.front()];
    // g^period(e) must return to the component.
    std::vector<Dart> w = {forward_dart(comp.front())};
    for (int i = 0; i < period; ++i) {
      std::vector<Dart> nx;
      for (Dart d : w) {
        auto p = m.image(d);
        nx.insert(nx.end(), p.darts.begin(), p.darts.end());
      }
      w = tighten_darts(g, nx);
    }
    bool inside = !w.empty();
    for (Dart d : w) inside = inside && in[edge_of(d)];
    if (inside || period > g.edge_count()) break;
  }
  ControlledGraphMap out;
  std::vector<VertexId> vmap(g.vertex_slots(), -1);
  std::vector<EdgeId> emap(g.edge_slots(), -1);
  for (EdgeId e : comp)
    for (Dart d : {forward_dart(e), backward_dart(e)}) {
      VertexId v = g.origin(d);
      if (vmap[v] < 0) vmap[v] = out.graph.add_vertex(g.vertex_name(v));
    }
  for (EdgeId e : comp)
    emap[e] = out.graph.add_edge(g.edge_name(e), EdgeKind::Free, vmap[g.origin(forward_dart(e))],
                                 vmap[g.origin(backward_dart(e))]);
  for (VertexId v = 0; v < g.vertex_slots(); ++v) {
    if (vmap[v] < 0) continue;
    std::vector<Dart> rot;
    for (Dart d : g.rotation(v))
      if (in[edge_of(d)]) rot.push_back(2 * emap[edge_of(d)] + (d & 1));
    out.graph.set_rotation(vmap[v], rot);
  }
  out.vertex_image.assign(out.graph.vertex_slots(), -1);
  for (VertexId v = 0; v < g.vertex_slots(); ++v) {
    if (vmap[v] < 0) continue;
    VertexId t = v;
    for (int i = 0; i < period; ++i) t = m.vertex_image[t];
    if (vmap[t] < 0) throw Error("H violates preconditions");
    out.vertex_image[vmap[v]] = vmap[t];
  }
  out.edge_image.assign(out.graph.edge_slots(), EdgePath{});
  for (EdgeId e : comp) {
    std::vector<Dart> w = {forward_dart(e)};
    for (int i = 0; i < period; ++i) {
      std::vector<Dart> nx;
      for (Dart d : w) {
        auto p = m.image(d);
        nx.insert(nx.end(), p.darts.begin(), p.darts.end());
      }
      w = tighten_darts(g, nx);
    }
    EdgePath p;
    for (Dart d : w) {
      if (!in[edge_of(d)]) throw Error("H violates preconditions");
      p.darts.push_back(2 * emap[edge_of(d)] + (d & 1));
    }
    p.anchor = out.vertex_image[vmap[g.origin(forward_dart(e))]];
    out.edge_image[emap[e]] = std::move(p);
  }
  return out;
}

}  // namespace

SeparatingReduction reduce_separating(const ControlledGraphMap& m, const std::vector<EdgeId>& h) {
  const auto& g = m.graph;
  std::vector<char> in = mask_of(g, h);
  if (h.empty() || !invariant_set(m, in)) throw Error("H violates preconditions");
  for (EdgeId e : h)
    if (g.is_control(e)) throw Error("H violates preconditions");
  auto comps = components_of(g, in);
  for (const auto& c : comps) {
    std::vector<char> touched(g.vertex_slots(), 0);
    int verts = 0;
    for (EdgeId e : c)
      for (Dart d : {forward_dart(e), backward_dart(e)})
        if (!touched[g.origin(d)]) {
          touched[g.origin(d)] = 1;
          ++verts;
        }
    if (verts - static_cast<int>(c.size()) >= 0) throw Error("H violates preconditions");
  }
  SeparatingReduction out;
  for (const auto& c : comps) out.components.push_back(restrict_power(m, c));
  FrontierSplit split(m, in);
  out.outside = split.build(nullptr);
  return out;
}

ControlledGraphMap restrict_to_invariant(const ControlledGraphMap& m, const std::vector<EdgeId>& h) {
  const auto& g = m.graph;
  std::vector<char> in = mask_of(g, h);
  if (h.empty() || !invariant_set(m, in)) throw Error("H violates preconditions");
  ControlledGraphMap out;
  std::vector<VertexId> vmap(g.vertex_slots(), -1);
  std::vector<EdgeId> emap(g.edge_slots(), -1);
  for (EdgeId e : g.edges()) {
    if (!in[e]) continue;
    for (Dart d : {forward_dart(e), backward_dart(e)}) {
      VertexId v = g.origin(d);
      if (vmap[v] < 0) vmap[v] = out.graph.add_vertex(g.vertex_name(v));
    }
  }
  for (EdgeId e : g.edges())
    if (in[e])
      emap[e] = out.graph.add_edge(g.edge_name(e), g.kind(e), vmap[g.origin(forward_dart(e))],
                                   vmap[g.origin(backward_dart(e))], g.marked_point(e));
  out.vertex_image.assign(out.graph.vertex_slots(), -1);
  for (VertexId v : g.vertices()) {
    if (vmap[v] < 0) continue;
    std::vector<Dart> rot;
    for (Dart d : g.rotation(v))
      if (in[edge_of(d)]) rot.push_back(2 * emap[edge_of(d)] + (d & 1));
    out.graph.set_rotation(vmap[v], rot);
    out.graph.set_vertex_marked(vmap[v], g.vertex_marked(v));
    if (vmap[m.vertex_image[v]] < 0) throw Error("H violates preconditions");
    out.vertex_image[vmap[v]] = vmap[m.vertex_image[v]];
  }
  out.edge_image.assign(out.graph.edge_slots(), EdgePath{});
  for (EdgeId e : g.edges()) {
    if (!in[e]) continue;
    EdgePath p;
    for (Dart d : m.edge_image[e].darts) p.darts.push_back(2 * emap[edge_of(d)] + (d & 1));
    p.anchor = out.vertex_image[vmap[g.origin(forward_dart(e))]];
    out.edge_image[emap[e]] = std::move(p);
  }
  return out;
}

NonSeparatingReduction reduce_nonseparating(const ControlledGraphMap& m,
                                            const std::vector<EdgeId>& h) {
  const auto& g = m.graph;
  if (h.empty()) throw Error("H not a disjoint union of circles");
  std::vector<char> in = mask_of(g, h);
  std::vector<int> deg(g.vertex_slots(), 0);
  for (EdgeId e : h) {
    ++deg[g.origin(forward_dart(e))];
    ++deg[g.origin(backward_dart(e))];
  }
  for (VertexId v : g.vertices())
    if (deg[v] != 0 && deg[v] != 2) throw Error("H not a disjoint union of circles");
  if (!invariant_set(m, in)) throw Error("H violates preconditions");
  for (EdgeId e : h)
    if (g.is_control(e) || m.edge_image[e].darts.size() != 1)
      throw Error("map on H is not a homeomorphism");
  NonSeparatingReduction out;
  FrontierSplit split(m, in);
  std::vector<std::vector<std::string>> loops;
  out.map = split.build(&loops);
  for (std::size_t i = 0; i + 1 < loops.size(); i += 2) out.pairing.push_back({loops[i], loops[i + 1]});
  return out;
}

}  // namespace graphrep
