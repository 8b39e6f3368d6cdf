#include "cases.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "graphrep/fixtures.hpp"
#include "graphrep/trellis.hpp"

namespace graphrep::testing {

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::size_t control_count(const ControlledGraphMap& g) { return control_edges(g.graph).size(); }

// Random walk of the given length from v, avoiding back-tracks.
EdgePath random_walk(const ControlledRibbonGraph& g, VertexId v, int length, Rng& rng) {
  EdgePath p = EdgePath::trivial(v);
  VertexId at = v;
  for (int i = 0; i < length; ++i) {
    const auto& rot = g.rotation(at);
    if (rot.empty()) break;
    Dart d = rot[pick(rng, rot.size())];
    if (!p.darts.empty() && d == g.rev(p.darts.back())) {
      if (rot.size() == 1) break;
      continue;
    }
    p.darts.push_back(d);
    at = g.target(d);
  }
  return p;
}

// One random move. `homotopy` is set for arbitrary vertex homotopies, which
// need not keep the map embeddable.
MoveResult random_move(const ControlledGraphMap& m, Rng& rng, bool* homotopy) {
  const auto& g = m.graph;
  const auto vs = g.vertices();
  const auto es = g.edges();
  switch (pick(rng, 5)) {
    case 0: {
      auto turns = classify_turns(m);
      std::vector<TurnClassification> bad;
      for (const auto& t : turns)
        if (t.cls == TurnClass::Bad) bad.push_back(t);
      if (bad.empty()) return {m, {}, "no bad turn", {}};
      const auto& t = bad[pick(rng, bad.size())];
      return fold_turn(m, t.first, t.second);
    }
    case 1: {
      VertexId v = vs[pick(rng, vs.size())];
      const auto& rot = g.rotation(v);
      if (rot.size() < 3) return {m, {}, "valence too small", {}};
      std::size_t start = pick(rng, rot.size());
      std::size_t len = 2 + pick(rng, rot.size() - 2);
      std::vector<Dart> arc;
      for (std::size_t i = 0; i < len; ++i) {
        arc.push_back(rot[(start + i) % rot.size()]);
        if (g.kind(edge_of(arc.back())) == EdgeKind::Peripheral) return {m, {}, "peripheral dart", {}};
      }
      return split_vertex(m, v, arc);
    }
    case 2: {
      VertexId v = vs[pick(rng, vs.size())];
      *homotopy = true;
      return vertex_homotopy(m, v, random_walk(g, m.vertex_image[v], 1 + pick(rng, 2), rng));
    }
    case 3: {
      VertexId v = vs[pick(rng, vs.size())];
      return valence3_homotopy(m, v);
    }
    default: {
      EdgeId e = es[pick(rng, es.size())];
      return collapse_edge(m, e);
    }
  }
}

std::string str(std::uint64_t seed) { return "seed " + std::to_string(seed); }

}  // namespace

std::string SuiteResult::summary() const {
  std::ostringstream s;
  s << cases << " cases, " << failures << " failures";
  if (failures) s << " (first: " << first_failure << ")";
  return s.str();
}

const std::vector<NamedMap>& fixture_maps() {
  static const std::vector<NamedMap> maps = [] {
    std::vector<NamedMap> v = {
        {"henon", henon_example()},
        {"algorithm2", algorithm2_example()},
        {"ar-reduction", ar_reduction_example()},
        {"punctured-disc", punctured_disc_example()},
        {"rose", rose_example()},
        {"finite-order", finite_order_example()},
        {"horseshoe", derive_initial_map(horseshoe())},
        {"crossing-free", derive_initial_map(crossing_free_trellis())},
    };
    return v;
  }();
  return maps;
}

std::vector<NamedMap> controlled_fixture_maps() {
  std::vector<NamedMap> out;
  for (const auto& f : fixture_maps())
    if (!control_edges(f.map.graph).empty()) out.push_back(f);
  return out;
}

ControlledGraphMap random_case(std::uint64_t seed) {
  const auto& maps = fixture_maps();
  const auto& base = maps[seed % maps.size()].map;
  return random_representation(base, seed, static_cast<int>(seed / maps.size() % 6));
}

ControlledGraphMap random_controlled_case(std::uint64_t seed) {
  static const auto maps = controlled_fixture_maps();
  const auto& base = maps[seed % maps.size()].map;
  return random_representation(base, seed, static_cast<int>(seed / maps.size() % 6));
}

AlgorithmOutcome run_for(const ControlledGraphMap& g, const AlgorithmLimits& limits) {
  if (!control_edges(g.graph).empty()) return run_main_algorithm(g, limits);
  if (!detect_peripheral_subgraph(g).edges.empty()) return run_peripheral_algorithm(g, limits);
  return run_puncture_algorithm(g, limits);
}

SuiteResult move_invariants_suite(int cases, std::uint64_t seed) {
  SuiteResult r;
  for (std::uint64_t s = seed; r.cases < cases && s < seed + 50ull * cases; ++s) {
    Rng rng(s);
    ControlledGraphMap m = random_case(s);
    const int chi = euler_characteristic(m.graph);
    const std::size_t controls = control_count(m);
    for (int step = 0; step < 3; ++step) {
      bool homotopy = false;
      MoveResult mv = random_move(m, rng, &homotopy);
      if (!mv.ok()) continue;
      ++r.cases;
      const std::string where = str(s) + " step " + std::to_string(step);
      if (euler_characteristic(mv.map.graph) != chi) r.fail(where + ": move changed euler characteristic");
      if (control_count(mv.map) != controls) r.fail(where + ": move changed control count");
      if (homotopy) break;
      MoveResult t = tidy(mv.map);
      if (!t.ok()) {
        r.fail(where + ": tidy failed: " + t.error);
        break;
      }
      ValidationReport v = validate_map(t.map);
      if (!v.ok()) r.fail(where + ": invalid after tidy: " + v.to_string());
      if (euler_characteristic(t.map.graph) != chi) r.fail(where + ": tidy changed euler characteristic");
      if (control_count(t.map) != controls) r.fail(where + ": tidy changed control count");
      m = t.map;
    }
  }
  return r;
}

SuiteResult valence3_lemma_suite(int cases, std::uint64_t seed) {
  SuiteResult r;
  for (std::uint64_t s = seed; r.cases < cases && s < seed + 50ull * cases; ++s) {
    Rng rng(s);
    const ControlledGraphMap m = tidy(random_controlled_case(s)).map;
    const auto& g = m.graph;
    std::vector<VertexId> vs;
    for (VertexId v : g.vertices())
      if (g.valence(v) == 3 && !g.is_control_vertex(v)) vs.push_back(v);
    if (vs.empty()) continue;
    const VertexId v = vs[pick(rng, vs.size())];
    EdgePath gamma = random_walk(g, m.vertex_image[v], 1 + static_cast<int>(pick(rng, 3)), rng);
    if (gamma.empty()) continue;
    MoveResult pushed = vertex_homotopy(m, v, gamma);
    if (!pushed.ok()) continue;
    MoveResult tight = tighten_edge_images(pushed.map);
    if (!tight.ok()) continue;
    const ControlledGraphMap& p = tight.map;
    const VertexId pv = *p.graph.find_vertex(g.vertex_name(v));

    EdgePath beta;
    const auto& rot = p.graph.rotation(pv);
    for (std::size_t i = 0; i < rot.size() && beta.empty(); ++i) {
      Dart a = rot[i], b = rot[(i + 1) % rot.size()];
      if (p.derivative(a) != kNoDart && p.derivative(a) == p.derivative(b))
        beta = common_prefix(p.graph, p.image(a), p.image(b));
    }
    MoveResult h3 = valence3_homotopy(p, pv);
    if (!h3.ok()) continue;
    const EdgeMask h = control_mask(p.graph);
    const int edges = p.graph.edge_count();
    const int bound = edges - mask_size(p.graph, h);
    int n = -1;
    ZetaComparison c;
    try {
      for (int k = 0; k <= edges && n < 0; ++k)
        if (h_norm_of_path(p, h, beta, k) > 0) n = k + 1;
      ZetaSeries before = zeta_truncated(p, h, edges);
      ZetaSeries after = zeta_truncated(h3.map, control_mask(h3.map.graph), edges);
      c = zeta_compare(after, before);
    } catch (const Error&) {
      continue;  // norms beyond 64 bits
    }
    ++r.cases;
    const std::string where = str(s) + " vertex " + g.vertex_name(v);
    if (n < 0) {
      if (c.verdict != Ordering::Equal) r.fail(where + ": zeta changed although beta never meets H");
    } else if (c.verdict != Ordering::Less || c.index != n) {
      r.fail(where + ": expected first drop at " + std::to_string(n) + ", got index " +
             std::to_string(c.index));
    } else if (n > bound) {
      r.fail(where + ": witness " + std::to_string(n) + " exceeds |G|-|H| = " + std::to_string(bound));
    }
  }
  return r;
}

SuiteResult trace_monotone_suite(int cases, std::uint64_t seed) {
  SuiteResult r;
  for (std::uint64_t s = seed; r.cases < cases; ++s) {
    ControlledGraphMap m = random_controlled_case(s);
    ++r.cases;
    AlgorithmOutcome out;
    try {
      out = run_main_algorithm(m);
    } catch (const std::exception& e) {
      r.fail(str(s) + ": " + e.what());
      continue;
    }
    for (std::size_t i = 1; i < out.trace.size(); ++i) {
      ZetaComparison c = compare_trace_keys(out.trace[i], out.trace[i - 1]);
      if (c.verdict != Ordering::Less) {
        r.fail(str(s) + ": key did not drop at move " + std::to_string(i) + " (" +
               out.trace[i].move.kind + ")");
        break;
      }
      if (c.index > out.trace[i].control_zeta.order()) {
        r.fail(str(s) + ": witness index beyond zeta order at move " + std::to_string(i));
        break;
      }
    }
  }
  return r;
}

SuiteResult termination_suite(int cases, std::uint64_t seed) {
  SuiteResult r;
  AlgorithmLimits limits;
  for (std::uint64_t s = seed; r.cases < cases; ++s) {
    ControlledGraphMap m = random_case(s);
    ++r.cases;
    try {
      AlgorithmOutcome out = run_for(m, limits);
      if (out.moves > limits.max_moves) r.fail(str(s) + ": move budget exceeded");
      if (!validate_map(out.map).ok()) r.fail(str(s) + ": invalid output");
      if (out.trace.empty()) {
        r.fail(str(s) + ": empty trace");
        continue;
      }
      // Counts after the essential restriction that starts every run.
      const MapSummary& start = out.trace.front().move.after;
      for (const auto& e : out.trace)
        if (e.move.after.euler != start.euler || e.move.after.control_edges != start.control_edges) {
          r.fail(str(s) + ": euler characteristic or control count changed at " + e.move.kind);
          break;
        }
      if (euler_characteristic(out.map.graph) != start.euler) r.fail(str(s) + ": output euler characteristic");
      if (static_cast<int>(control_count(out.map)) != start.control_edges)
        r.fail(str(s) + ": output control count");
    } catch (const std::exception& e) {
      r.fail(str(s) + ": " + e.what());
    }
  }
  return r;
}

SuiteResult uniqueness_suite(const ControlledGraphMap& g, int presentations, std::uint64_t seed) {
  SuiteResult r;
  std::vector<ControlledGraphMap> outs;
  for (int i = 0; i < presentations; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    ControlledGraphMap rep = random_representation(g, s, 1 + i % 6);
    try {
      outs.push_back(run_for(rep).map);
    } catch (const std::exception& e) {
      r.fail(str(s) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < outs.size(); ++i)
    for (std::size_t j = i + 1; j < outs.size(); ++j) {
      ++r.cases;
      if (!graphs_conjugate(outs[i], outs[j]))
        r.fail("presentations " + std::to_string(i) + " and " + std::to_string(j) + " not conjugate");
    }
  return r;
}

SuiteResult closed_word_oracle_suite(int max_edges, int max_n) {
  SuiteResult r;
  std::vector<NamedMap> maps;
  for (const auto& f : fixture_maps()) {
    maps.push_back(f);
    AlgorithmOutcome out = run_for(f.map);
    maps.push_back({f.name + "-output", out.map});
    if (out.result != AlgorithmResult::Reduction) {
      maps.push_back({f.name + "-essential", essential_representative(out.map)});
      maps.push_back({f.name + "-topological", topological_representative(out.map)});
    }
  }
  for (const auto& [name, m] : maps) {
    const auto es = m.graph.edges();
    const int size = static_cast<int>(es.size());
    if (size == 0 || size > max_edges) continue;
    std::map<EdgeId, int> slot;
    for (int i = 0; i < size; ++i) slot[es[i]] = i;
    std::vector<std::vector<std::int64_t>> occ(size, std::vector<std::int64_t>(size, 0));
    for (int i = 0; i < size; ++i)
      for (Dart d : m.edge_image[es[i]].darts) ++occ[i][slot.at(edge_of(d))];
    const IntMatrix a = transition_matrix(m).entries;
    for (int n = 1; n <= max_n; ++n) {
      ++r.cases;
      std::int64_t brute = 0;
      std::vector<int> w(n, 0);
      for (;;) {
        std::int64_t prod = 1;
        for (int k = 0; k < n && prod; ++k) prod *= occ[w[k]][w[(k + 1) % n]];
        brute += prod;
        int k = 0;
        while (k < n && ++w[k] == size) w[k++] = 0;
        if (k == n) break;
      }
      const std::int64_t tr = trace(matrix_power(a, n));
      if (tr != brute)
        r.fail(name + " n=" + std::to_string(n) + ": trace " + std::to_string(tr) + " vs " +
               std::to_string(brute));
    }
  }
  return r;
}

namespace {

// All irreducible words reachable by cancelling adjacent (d, rev d) pairs whose
// turn-around vertex is not marked, in every possible order.
std::set<std::vector<Dart>> exhaustive_reductions(const ControlledRibbonGraph& g,
                                                  const std::vector<Dart>& word) {
  std::set<std::vector<Dart>> seen, irreducible;
  std::vector<std::vector<Dart>> stack{word};
  seen.insert(word);
  while (!stack.empty()) {
    std::vector<Dart> w = std::move(stack.back());
    stack.pop_back();
    bool any = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i + 1] != g.rev(w[i]) || g.vertex_marked(g.target(w[i]))) continue;
      any = true;
      std::vector<Dart> next(w.begin(), w.begin() + static_cast<long>(i));
      next.insert(next.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      if (seen.insert(next).second) stack.push_back(std::move(next));
    }
    if (!any) irreducible.insert(w);
  }
  return irreducible;
}

}  // namespace

SuiteResult tighten_oracle_suite(int words, int max_length, std::uint64_t seed) {
  SuiteResult r;
  std::vector<NamedMap> graphs = fixture_maps();
  graphs.push_back({"henon-topological", topological_representative(run_for(henon_example()).map)});
  Rng rng(seed);
  for (int i = 0; i < words; ++i) {
    const auto& [name, m] = graphs[static_cast<std::size_t>(i) % graphs.size()];
    const auto& g = m.graph;
    const auto vs = g.vertices();
    VertexId at = vs[pick(rng, vs.size())];
    EdgePath p = EdgePath::trivial(at);
    const int len = static_cast<int>(pick(rng, static_cast<std::size_t>(max_length) + 1));
    for (int k = 0; k < len; ++k) {
      const auto& rot = g.rotation(at);
      if (rot.empty()) break;
      Dart d = (!p.darts.empty() && rng() % 5 < 2) ? g.rev(p.darts.back()) : rot[pick(rng, rot.size())];
      p.darts.push_back(d);
      at = g.target(d);
    }
    ++r.cases;
    auto expected = exhaustive_reductions(g, p.darts);
    EdgePath t = tighten_path(g, p);
    const std::string where = name + " word " + path_to_string(g, p);
    if (expected.size() != 1)
      r.fail(where + ": cancellation is not confluent");
    else if (t.darts != *expected.begin())
      r.fail(where + ": tighten_path gave " + path_to_string(g, t));
    else if (path_start(g, t) != path_start(g, p) || path_end(g, t) != path_end(g, p))
      r.fail(where + ": endpoints moved");
  }
  return r;
}

}  // namespace graphrep::testing
