#include <algorithm>
#include <map>
#include <numeric>

#include "graphrep/optimize.hpp"

namespace graphrep {

const char* to_string(AlgorithmResult r) {
  switch (r) {
    case AlgorithmResult::Optimal: return "optimal";
    case AlgorithmResult::Efficient: return "efficient";
    case AlgorithmResult::Reduction: return "reduction";
  }
  return "optimal";
}

ZetaComparison compare_trace_keys(const TraceEntry& a, const TraceEntry& b) {
  ZetaComparison c = zeta_compare(a.control_zeta, b.control_zeta);
  if (c.verdict != Ordering::Equal) return c;
  if (a.peripheral_edges != b.peripheral_edges)
    return {a.peripheral_edges > b.peripheral_edges ? Ordering::Less : Ordering::Greater, -1};
  return zeta_compare(a.peripheral_zeta, b.peripheral_zeta);
}

namespace {

constexpr int kTidyGuard = 100000;

class Runner {
 public:
  Runner(const ControlledGraphMap& g, const AlgorithmLimits& limits)
      : m_(g), limits_(limits) {
    order_ = limits.zeta_order >= 0 ? limits.zeta_order : g.graph.edge_count();
  }

  ControlledGraphMap& map() { return m_; }
  AlgorithmOutcome& outcome() { return out_; }

  void tidy_all() {
    refresh_peripheral_kinds(m_);
    for (int i = 0; i < kTidyGuard; ++i) {
      if (inplace::tidy_step(m_, nullptr).empty()) break;
    }
    refresh_peripheral_kinds(m_);
  }

  void record(const std::string& kind, std::vector<std::string> operands,
              const MapSummary& before, std::string note = {}) {
    TraceEntry t;
    t.move.kind = kind;
    t.move.operands = std::move(operands);
    t.move.before = before;
    t.move.after = summarize(m_);
    t.move.note = std::move(note);
    t.control_zeta = zeta_truncated(m_, control_mask(m_.graph), order_);
    t.peripheral_edges = mask_size(m_.graph, peripheral_mask(m_.graph));
    t.peripheral_zeta = zeta_truncated(m_, peripheral_mask(m_.graph), order_);
    out_.trace.push_back(std::move(t));
  }

  void count_move() {
    if (++out_.moves > limits_.max_moves) throw Error("move budget exceeded");
  }

  void prepare() {
    MapSummary before = summarize(m_);
    tidy_all();
    inplace::restrict_essential(m_);
    tidy_all();
    record("start", {}, before);
  }

  AlgorithmOutcome finish(AlgorithmResult r, std::optional<ReductionFinding> finding = {}) {
    out_.result = r;
    out_.map = compact(m_);
    out_.zeta = zeta_truncated(out_.map, control_mask(out_.map.graph), order_);
    out_.reduction = std::move(finding);
    return std::move(out_);
  }

  // Lowest (vertex id, cyclic position) turn accepted by `want`.
  template <class Pred>
  std::optional<std::pair<Dart, Dart>> first_turn(Pred want) {
    const auto& g = m_.graph;
    for (VertexId v : g.vertices()) {
      if (g.valence(v) < 2) continue;
      for (Dart a : g.rotation(v)) {
        Dart b = g.succ(a);
        if (edge_of(a) == edge_of(b) && !g.is_loop(edge_of(a))) continue;
        if (g.is_control(edge_of(a)) || g.is_control(edge_of(b))) continue;
        Dart da = m_.derivative(a);
        if (da == kNoDart || da != m_.derivative(b)) continue;
        if (want(v, a, b)) return std::make_pair(a, b);
      }
    }
    return std::nullopt;
  }

  bool fold_or_homotope(Dart a, Dart b, std::vector<std::string>* ops, std::string* kind) {
    auto& g = m_.graph;
    VertexId v = g.origin(a);
    *ops = {g.dart_name(a), g.dart_name(b)};
    if (g.valence(v) > 3 || g.is_control_vertex(v)) {
      *kind = "fold";
      return inplace::fold(m_, a, b, nullptr).empty();
    }
    *kind = "valence3-homotopy";
    EdgePath beta = common_prefix(g, m_.image(a), m_.image(b));
    return inplace::homotope(m_, v, beta).empty();
  }

  bool collapse_trivial_peripheral(std::vector<std::string>* ops) {
    auto& g = m_.graph;
    bool any = false;
    for (bool again = true; again;) {
      again = false;
      for (EdgeId e : g.edges()) {
        if (g.kind(e) != EdgeKind::Peripheral || !m_.edge_image[e].darts.empty() || g.is_loop(e))
          continue;
        ops->push_back(g.edge_name(e));
        inplace::collapse(m_, e, true);
        any = again = true;
        break;
      }
    }
    return any;
  }

 private:
  ControlledGraphMap m_;
  AlgorithmLimits limits_;
  AlgorithmOutcome out_;
  int order_ = 0;
};

std::optional<ReductionFinding> proper_control_free_reduction(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  std::vector<char> ess(g.edge_slots(), 0);
  for (EdgeId e : essential_edges(m)) ess[e] = 1;
  for (EdgeId e : g.edges()) {
    if (!ess[e] || g.kind(e) == EdgeKind::Peripheral) continue;
    std::vector<char> h = forward_closure(m, {e});
    bool proper = false;
    for (EdgeId x : g.edges())
      if (ess[x] && !h[x] && g.kind(x) != EdgeKind::Peripheral) proper = true;
    if (!proper) continue;
    ReductionFinding f;
    std::vector<EdgeId> hs;
    for (EdgeId x : g.edges())
      if (h[x]) hs.push_back(x);
    f.kind = ReductionKind::SeparatingCurve;
    std::string why;
    for (auto& n : hs) f.edges.push_back(g.edge_name(n));
    int verts = 0;
    std::vector<char> touched(g.vertex_slots(), 0);
    for (EdgeId x : hs) {
      touched[g.origin(forward_dart(x))] = 1;
      touched[g.origin(backward_dart(x))] = 1;
    }
    for (VertexId v : g.vertices()) verts += touched[v];
    f.euler = verts - static_cast<int>(hs.size());
    if (verify_reduction(m, f, &why)) return f;
    f.kind = ReductionKind::NonSeparatingCurve;
    if (verify_reduction(m, f, &why)) return f;
  }
  return std::nullopt;
}

}  // namespace

AlgorithmOutcome run_main_algorithm(const ControlledGraphMap& g, const AlgorithmLimits& limits) {
  if (control_edges(g.graph).empty()) throw Error("map has no control edges");
  Runner run(g, limits);
  run.prepare();
  auto& m = run.map();
  if (auto ar = find_attractor_repellor(m)) return run.finish(AlgorithmResult::Reduction, ar);
  for (;;) {
    if (auto red = find_invariant_curve_reduction(m))
      return run.finish(AlgorithmResult::Reduction, red);
    MapSummary before = summarize(m);
    std::vector<std::string> ops;
    std::string kind;
    auto turn = run.first_turn([&](VertexId v, Dart, Dart) {
      return m.graph.valence(v) > 3 || m.graph.is_control_vertex(v);
    });
    if (!turn)
      turn = run.first_turn([&](VertexId v, Dart, Dart) {
        return m.graph.valence(v) == 3 && !m.graph.is_control_vertex(v);
      });
    if (turn) {
      run.count_move();
      if (!run.fold_or_homotope(turn->first, turn->second, &ops, &kind))
        throw Error("move failed at turn " + ops[0] + " " + ops[1]);
    } else if (run.collapse_trivial_peripheral(&ops)) {
      run.count_move();
      kind = "collapse-peripheral";
    } else {
      break;
    }
    run.tidy_all();
    run.record(kind, ops, before);
  }
  if (auto ar = find_attractor_repellor(m)) return run.finish(AlgorithmResult::Reduction, ar);
  return run.finish(AlgorithmResult::Optimal);
}

namespace {

AlgorithmOutcome peripheral_loop(Runner& run) {
  auto& m = run.map();
  for (;;) {
    if (auto red = proper_control_free_reduction(m))
      return run.finish(AlgorithmResult::Reduction, red);
    Certificate eff = is_efficient(m);
    if (eff.holds) return run.finish(AlgorithmResult::Efficient);
    MapSummary before = summarize(m);
    std::vector<std::string> ops;
    std::string kind;
    run.count_move();
    if (eff.turn) {
      if (!run.fold_or_homotope(eff.turn->first, eff.turn->second, &ops, &kind))
        throw Error("move failed at inefficient turn");
    } else {
      kind = "collapse-forest";
      for (EdgeId e : eff.forest) ops.push_back(m.graph.edge_name(e));
      inplace::collapse_forest(m, eff.forest);
    }
    run.tidy_all();
    if (run.collapse_trivial_peripheral(&ops)) run.tidy_all();
    run.record(kind, ops, before);
  }
}

struct Orbit {
  std::vector<VertexId> vertices;
};

Orbit shortest_periodic_orbit(const ControlledGraphMap& m) {
  Orbit best;
  for (VertexId v : m.graph.vertices()) {
    VertexId x = v;
    int period = 0;
    do {
      x = m.vertex_image[x];
      ++period;
    } while (x != v && period <= m.graph.vertex_slots());
    if (x != v) continue;
    if (best.vertices.empty() || period < static_cast<int>(best.vertices.size())) {
      best.vertices.clear();
      x = v;
      for (int i = 0; i < period; ++i) {
        best.vertices.push_back(x);
        x = m.vertex_image[x];
      }
    }
  }
  if (best.vertices.empty()) throw Error("no periodic orbit found");
  return best;
}

// Adds one loop per orbit vertex; tries insertion slots until embeddable.
std::vector<EdgeId> puncture(ControlledGraphMap& m, const Orbit& orbit) {
  auto& g = m.graph;
  const int k = static_cast<int>(orbit.vertices.size());
  std::vector<std::vector<Dart>> base;
  for (VertexId v : orbit.vertices) base.push_back(g.rotation(v));
  std::vector<EdgeId> loops;
  for (int i = 0; i < k; ++i) {
    VertexId v = orbit.vertices[i];
    loops.push_back(g.add_edge(g.fresh_edge_name("lambda"), EdgeKind::Free, v, v));
  }
  m.edge_image.resize(g.edge_slots());
  std::vector<int> slot(k, 0);
  for (int flip = 0; flip < 2; ++flip) {
    for (int i = 0; i < k; ++i) {
      EdgeId next = loops[(i + 1) % k];
      Dart d = flip ? backward_dart(next) : forward_dart(next);
      m.edge_image[loops[i]] = make_path(g, {d});
    }
    std::fill(slot.begin(), slot.end(), 0);
    for (long long guard = 0; guard < 200000; ++guard) {
      for (int i = 0; i < k; ++i) {
        std::vector<Dart> r = base[i];
        int pos = r.empty() ? 0 : slot[i] % static_cast<int>(r.size());
        r.insert(r.begin() + pos, {backward_dart(loops[i]), forward_dart(loops[i])});
        g.set_rotation(orbit.vertices[i], r);
      }
      if (is_embeddable(m)) return loops;
      int i = 0;
      while (i < k) {
        int val = std::max<int>(1, static_cast<int>(base[i].size()));
        if (++slot[i] < val) break;
        slot[i] = 0;
        ++i;
      }
      if (i == k) break;
    }
  }
  throw Error("no embeddable puncture found");
}

void remove_loops(ControlledGraphMap& m, const std::vector<EdgeId>& loops) {
  auto& g = m.graph;
  std::vector<char> drop(g.edge_slots(), 0);
  for (EdgeId e : loops)
    if (g.edge_alive(e)) drop[e] = 1;
  for (EdgeId e : g.edges()) {
    auto& p = m.edge_image[e];
    if (p.darts.empty()) continue;
    VertexId start = path_start(g, p);
    p.darts.erase(std::remove_if(p.darts.begin(), p.darts.end(),
                                 [&](Dart d) { return drop[edge_of(d)] != 0; }),
                  p.darts.end());
    p.anchor = start;
  }
  for (EdgeId e : loops)
    if (g.edge_alive(e)) {
      g.kill_edge(e);
      g.set_origin(forward_dart(e), -1);
      g.set_origin(backward_dart(e), -1);
    }
}

}  // namespace

AlgorithmOutcome run_peripheral_algorithm(const ControlledGraphMap& g,
                                          const AlgorithmLimits& limits) {
  if (!control_edges(g.graph).empty()) throw Error("map has control edges");
  Runner run(g, limits);
  run.prepare();
  if (detect_peripheral_subgraph(run.map()).edges.empty())
    throw Error("map has no peripheral subgraph");
  return peripheral_loop(run);
}

AlgorithmOutcome run_puncture_algorithm(const ControlledGraphMap& g,
                                        const AlgorithmLimits& limits) {
  if (!control_edges(g.graph).empty()) throw Error("map has control edges");
  Runner run(g, limits);
  run.prepare();
  auto& m = run.map();
  for (int round = 0; round < 64; ++round) {
    if (auto red = proper_control_free_reduction(m))
      return run.finish(AlgorithmResult::Reduction, red);
    if (is_efficient(m).holds) return run.finish(AlgorithmResult::Efficient);
    if (!detect_peripheral_subgraph(m).edges.empty()) return peripheral_loop(run);
    MapSummary before = summarize(m);
    Orbit orbit = shortest_periodic_orbit(m);
    std::vector<EdgeId> loops = puncture(m, orbit);
    run.tidy_all();
    std::vector<std::string> ops;
    for (VertexId v : orbit.vertices) ops.push_back(m.graph.vertex_name(v));
    run.record("puncture", ops, before);
    Runner inner(compact(m), limits);
    // Loops keep their names through compaction.
    std::vector<std::string> loop_names;
    for (EdgeId e : loops) loop_names.push_back(m.graph.edge_name(e));
    inner.prepare();
    AlgorithmOutcome sub = peripheral_loop(inner);
    for (auto& t : sub.trace) run.outcome().trace.push_back(std::move(t));
    run.outcome().moves += sub.moves;
    if (sub.result == AlgorithmResult::Reduction) {
      m = sub.map;
      return run.finish(AlgorithmResult::Reduction, sub.reduction);
    }
    m = sub.map;
    std::vector<EdgeId> alive;
    for (const auto& n : loop_names)
      if (auto e = m.graph.find_edge(n)) alive.push_back(*e);
    before = summarize(m);
    remove_loops(m, alive);
    run.tidy_all();
    run.record("fill-punctures", loop_names, before);
  }
  throw Error("move budget exceeded");
}

}  // namespace graphrep
