#include "graphrep/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "graphrep/moves.hpp"

namespace graphrep {

namespace {

IntMatrix occurrences(const ControlledGraphMap& m, const std::vector<EdgeId>& edges) {
  std::vector<int> col(m.graph.edge_slots(), -1);
  for (std::size_t i = 0; i < edges.size(); ++i) col[edges[i]] = static_cast<int>(i);
  IntMatrix a(edges.size(), std::vector<std::int64_t>(edges.size(), 0));
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (Dart d : m.edge_image[edges[i]].darts) {
      int j = col[edge_of(d)];
      if (j >= 0) ++a[i][j];
    }
  return a;
}

}  // namespace

TransitionMatrix transition_matrix(const ControlledGraphMap& m, MatrixScope scope, int component) {
  const auto& g = m.graph;
  TransitionMatrix t;
  switch (scope) {
    case MatrixScope::All: t.edges = g.edges(); break;
    case MatrixScope::Essential: t.edges = essential_edges(m); break;
    case MatrixScope::Expanding:
      for (EdgeId e : essential_edges(m))
        if (!g.is_control(e)) t.edges.push_back(e);
      break;
    case MatrixScope::Component: {
      auto ess = essential_edges(m);
      IntMatrix a = occurrences(m, ess);
      int k = 0;
      bool found = false;
      for (const auto& b : irreducible_blocks(a)) {
        if (b.size() == 1 && a[b[0]][b[0]] == 0) continue;
        if (k++ == component) {
          for (int i : b) t.edges.push_back(ess[i]);
          found = true;
          break;
        }
      }
      if (!found) throw Error("no such component");
      break;
    }
  }
  for (EdgeId e : t.edges) t.index.push_back(g.edge_name(e));
  t.entries = occurrences(m, t.edges);
  return t;
}

double map_entropy(const ControlledGraphMap& g) {
  return growth_rate(transition_matrix(g)).entropy;
}

double nielsen_entropy(const AlgorithmOutcome& outcome) {
  if (outcome.result == AlgorithmResult::Reduction) throw Error("not a representative");
  return map_entropy(outcome.map);
}

ControlledGraphMap essential_representative(const ControlledGraphMap& g) {
  ControlledGraphMap w = g;
  inplace::restrict_essential(w);
  return compact(w);
}

namespace {

// Joins the free edges through a valence-2 vertex that is not an image vertex
// when every image passes straight through it. Images are not tightened.
bool join_once(ControlledGraphMap& m) {
  auto& g = m.graph;
  std::vector<char> is_image(g.vertex_slots(), 0);
  for (VertexId v : g.vertices()) is_image[m.vertex_image[v]] = 1;
  for (VertexId v : g.vertices()) {
    if (g.valence(v) != 2 || is_image[v]) continue;
    Dart d1 = g.rotation(v)[0], d2 = g.rotation(v)[1];
    EdgeId e1 = edge_of(d1), e2 = edge_of(d2);
    if (e1 == e2 || g.is_control(e1) || g.is_control(e2)) continue;
    if (g.kind(e1) != g.kind(e2)) continue;
    Dart in = g.rev(d1), out = d2;
    bool ok = true;
    for (EdgeId x : g.edges()) {
      const auto& p = m.edge_image[x].darts;
      for (std::size_t i = 0; i < p.size() && ok; ++i) {
        if (p[i] == in) ok = i + 1 < p.size() && p[i + 1] == out;
        if (p[i] == g.rev(out)) ok = i + 1 < p.size() && p[i + 1] == g.rev(in);
      }
      if (!ok) break;
    }
    if (!ok) continue;
    VertexId u = g.origin(in), w = g.target(out);
    std::string name = g.edge_name(edge_of(in)) + g.edge_name(edge_of(out));
    if (g.find_edge(name)) name = g.fresh_edge_name(name + "_");
    EdgeId c = g.add_edge(name, g.kind(e1), u, w);
    Dart cf = forward_dart(c), cb = backward_dart(c);
    m.edge_image.resize(g.edge_slots());
    m.edge_image[c] = concat(g, m.image(in), m.image(out));
    for (EdgeId x : g.edges()) {
      auto& p = m.edge_image[x].darts;
      std::vector<Dart> q;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == in) {
          q.push_back(cf);
          ++i;
        } else if (p[i] == g.rev(out)) {
          q.push_back(cb);
          ++i;
        } else {
          q.push_back(p[i]);
        }
      }
      p = std::move(q);
    }
    auto rotu = g.rotation(u);
    for (auto& d : rotu)
      if (d == in) d = cf;
    g.set_rotation(u, rotu);
    auto rotw = g.rotation(w);
    for (auto& d : rotw)
      if (d == g.rev(out)) d = cb;
    g.set_rotation(w, rotw);
    g.set_rotation(v, {});
    g.kill_edge(e1);
    g.kill_edge(e2);
    for (Dart d : {forward_dart(e1), backward_dart(e1), forward_dart(e2), backward_dart(e2)})
      g.set_origin(d, -1);
    g.kill_vertex(v);
    return true;
  }
  return false;
}

}  // namespace

ControlledGraphMap topological_representative(const ControlledGraphMap& g, bool join) {
  ControlledGraphMap m = g;
  inplace::restrict_essential(m);
  for (EdgeId e : m.graph.edges()) {
    if (!m.graph.is_control(e) || !m.graph.edge_alive(e)) continue;
    VertexId v = m.graph.origin(forward_dart(e));
    if (m.graph.is_loop(e)) {
      for (EdgeId x : m.graph.edges()) {
        auto& p = m.edge_image[x];
        VertexId start = path_start(m.graph, p);
        p.darts.erase(std::remove_if(p.darts.begin(), p.darts.end(),
                                     [&](Dart d) { return edge_of(d) == e; }),
                      p.darts.end());
        p.anchor = start;
      }
      m.graph.kill_edge(e);
    } else {
      inplace::contract(m, e);
    }
    m.graph.set_vertex_marked(v, true);
  }
  if (join)
    while (join_once(m)) {
    }
  return compact(m);
}

namespace {

class ConjugacySearch {
 public:
  ConjugacySearch(const ControlledGraphMap& a, const ControlledGraphMap& b, std::size_t budget)
      : a_(a), b_(b), budget_(budget) {}

  std::optional<ConjugacyWitness> run() {
    const auto& ga = a_.graph;
    const auto& gb = b_.graph;
    if (ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count())
      return std::nullopt;
    for (bool reflect : {false, true}) {
      std::vector<Dart> dmap(ga.dart_slots(), kNoDart);
      std::vector<char> used(gb.dart_slots(), 0);
      if (match_components(reflect, dmap, used)) return finish(reflect, dmap);
    }
    return std::nullopt;
  }

 private:
  // Propagates from (s -> t) through rev and succ; false on any clash.
  bool propagate(Dart s, Dart t, bool reflect, std::vector<Dart>& dmap, std::vector<char>& used,
                 std::vector<Dart>* added) {
    const auto& ga = a_.graph;
    const auto& gb = b_.graph;
    std::deque<std::pair<Dart, Dart>> q{{s, t}};
    while (!q.empty()) {
      if (++steps_ > budget_) throw Error("search budget exceeded");
      auto [x, y] = q.front();
      q.pop_front();
      if (dmap[x] != kNoDart) {
        if (dmap[x] != y) return false;
        continue;
      }
      if (used[y]) return false;
      EdgeId ex = edge_of(x), ey = edge_of(y);
      if (ga.kind(ex) != gb.kind(ey)) return false;
      if (ga.vertex_marked(ga.origin(x)) != gb.vertex_marked(gb.origin(y))) return false;
      if (ga.valence(ga.origin(x)) != gb.valence(gb.origin(y))) return false;
      dmap[x] = y;
      used[y] = 1;
      added->push_back(x);
      q.push_back({ga.rev(x), gb.rev(y)});
      q.push_back({ga.succ(x), reflect ? gb.pred(y) : gb.succ(y)});
    }
    return true;
  }

  void undo(const std::vector<Dart>& added, std::vector<Dart>& dmap, std::vector<char>& used) {
    for (Dart x : added) {
      used[dmap[x]] = 0;
      dmap[x] = kNoDart;
    }
  }

  bool images_agree(const std::vector<Dart>& dmap, const std::vector<Dart>& darts) const {
    const auto& ga = a_.graph;
    const auto& gb = b_.graph;
    for (Dart x : darts) {
      if (is_backward(x)) continue;
      const auto& pa = a_.edge_image[edge_of(x)].darts;
      EdgePath pb = b_.image(dmap[x]);
      if (pa.size() != pb.darts.size()) return false;
      for (std::size_t i = 0; i < pa.size(); ++i)
        if (dmap[pa[i]] == kNoDart) continue;  // checked once all components are matched
        else if (dmap[pa[i]] != pb.darts[i]) return false;
      (void)ga;
      (void)gb;
    }
    return true;
  }

  bool match_components(bool reflect, std::vector<Dart>& dmap, std::vector<char>& used) {
    const auto& ga = a_.graph;
    const auto& gb = b_.graph;
    Dart s = kNoDart;
    // Next unmatched dart of a, preferring control darts.
    for (EdgeId e : ga.edges())
      if (dmap[forward_dart(e)] == kNoDart && ga.is_control(e)) {
        s = forward_dart(e);
        break;
      }
    if (s == kNoDart)
      for (EdgeId e : ga.edges())
        if (dmap[forward_dart(e)] == kNoDart) {
          s = forward_dart(e);
          break;
        }
    if (s == kNoDart) return full_check(dmap);
    for (EdgeId f : gb.edges())
      for (Dart t : {forward_dart(f), backward_dart(f)}) {
        if (used[t] || gb.kind(f) != ga.kind(edge_of(s))) continue;
        std::vector<Dart> added;
        bool ok = propagate(s, t, reflect, dmap, used, &added) && images_agree(dmap, added);
        if (ok && match_components(reflect, dmap, used)) return true;
        undo(added, dmap, used);
      }
    return false;
  }

  bool full_check(const std::vector<Dart>& dmap) const {
    const auto& ga = a_.graph;
    const auto& gb = b_.graph;
    for (EdgeId e : ga.edges()) {
      const auto& pa = a_.edge_image[e].darts;
      EdgePath pb = b_.image(dmap[forward_dart(e)]);
      if (pa.size() != pb.darts.size()) return false;
      for (std::size_t i = 0; i < pa.size(); ++i)
        if (dmap[pa[i]] != pb.darts[i]) return false;
    }
    for (VertexId v : ga.vertices()) {
      if (ga.valence(v) == 0) continue;
      VertexId vb = gb.origin(dmap[ga.rotation(v)[0]]);
      VertexId iv = a_.vertex_image[v];
      if (ga.valence(iv) == 0) continue;
      if (gb.origin(dmap[ga.rotation(iv)[0]]) != b_.vertex_image[vb]) return false;
    }
    return true;
  }

  ConjugacyWitness finish(bool reflect, const std::vector<Dart>& dmap) const {
    ConjugacyWitness w;
    w.reflected = reflect;
    w.dart_map = dmap;
    const auto& ga = a_.graph;
    w.vertex_map.assign(ga.vertex_slots(), -1);
    for (VertexId v : ga.vertices())
      if (ga.valence(v) > 0) w.vertex_map[v] = b_.graph.origin(dmap[ga.rotation(v)[0]]);
    return w;
  }

  const ControlledGraphMap& a_;
  const ControlledGraphMap& b_;
  std::size_t budget_;
  std::size_t steps_ = 0;
};

}  // namespace

std::optional<ConjugacyWitness> graphs_conjugate(const ControlledGraphMap& g1,
                                                 const ControlledGraphMap& g2,
                                                 std::size_t budget) {
  return ConjugacySearch(compact(g1), compact(g2), budget).run();
}

EdgePath minimal_iterate_path(const ControlledGraphMap& g, const EdgePath& alpha) {
  return tighten_path(g.graph, apply_map(g, alpha));
}

}  // namespace graphrep
