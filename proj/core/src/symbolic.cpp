#include "graphrep/symbolic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace graphrep {

ItineraryTable itineraries(const ControlledGraphMap& m, const RegionLabels& labels, int n,
                           const std::vector<std::string>& keep, std::size_t max_words) {
  if (labels.empty()) throw Error("no region labeling");
  const auto& g = m.graph;
  std::vector<int> parent(g.vertex_slots());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e : g.edges())
    if (!g.is_control(e)) {
      int a = find(g.origin(forward_dart(e))), b = find(g.origin(backward_dart(e)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> state_of(g.vertex_slots(), -1);
  std::vector<int> root_state(g.vertex_slots(), -1);
  ItineraryTable full;
  for (VertexId v : g.vertices()) {
    int r = find(v);
    if (root_state[r] < 0) {
      root_state[r] = static_cast<int>(full.state_vertices.size());
      full.state_vertices.emplace_back();
      full.state_labels.emplace_back();
    }
    state_of[v] = root_state[r];
    full.state_vertices[state_of[v]].push_back(v);
  }
  auto add_label = [&](int s, const std::string& l) {
    auto& cur = full.state_labels[s];
    if (cur.empty())
      cur = l;
    else if (cur != l && cur.find(l) == std::string::npos)
      cur += "|" + l;
  };
  for (EdgeId e : g.edges()) {
    if (!g.is_control(e)) continue;
    auto it = labels.control_sides.find(g.edge_name(e));
    if (it == labels.control_sides.end()) continue;
    if (!it->second.first.empty()) add_label(state_of[g.origin(forward_dart(e))], it->second.first);
    if (!it->second.second.empty())
      add_label(state_of[g.origin(backward_dart(e))], it->second.second);
  }
  for (const auto& [name, l] : labels.vertices)
    if (auto v = g.find_vertex(name)) add_label(state_of[*v], l);

  const std::size_t ns = full.state_vertices.size();
  full.transitions.assign(ns, std::vector<std::int64_t>(ns, 0));
  auto link = [&](int x, VertexId v) { full.transitions[x][state_of[v]] = 1; };
  for (VertexId v : g.vertices()) link(state_of[v], m.vertex_image[v]);
  for (EdgeId e : g.edges()) {
    const EdgePath& p = m.edge_image[e];
    if (g.is_control(e)) {
      Dart z = p.darts.empty() ? kNoDart : p.darts.front();
      if (z == kNoDart) continue;
      link(state_of[g.origin(forward_dart(e))], g.origin(z));
      link(state_of[g.origin(backward_dart(e))], g.target(z));
      continue;
    }
    int x = state_of[g.origin(forward_dart(e))];
    // Every component the image path meets.
    link(x, path_start(g, p));
    for (Dart d : p.darts) {
      link(x, g.origin(d));
      link(x, g.target(d));
    }
  }

  // Restriction to the requested labels.
  std::vector<int> idx;
  for (std::size_t s = 0; s < ns; ++s)
    if (keep.empty() ||
        std::find(keep.begin(), keep.end(), full.state_labels[s]) != keep.end())
      idx.push_back(static_cast<int>(s));
  ItineraryTable t;
  for (int s : idx) {
    t.state_labels.push_back(full.state_labels[s]);
    t.state_vertices.push_back(full.state_vertices[s]);
  }
  t.transitions = submatrix(full.transitions, idx);
  std::set<std::string> alpha(t.state_labels.begin(), t.state_labels.end());
  t.alphabet.assign(alpha.begin(), alpha.end());

  std::set<std::vector<std::string>> seen;
  std::vector<std::pair<std::vector<int>, std::vector<std::string>>> layer;
  for (std::size_t s = 0; s < idx.size(); ++s) layer.push_back({{static_cast<int>(s)}, {t.state_labels[s]}});
  for (int len = 1; len <= n && !layer.empty(); ++len) {
    std::set<std::vector<std::string>> level_words;
    std::set<std::pair<int, std::vector<std::string>>> frontier_keys;
    std::vector<std::pair<std::vector<int>, std::vector<std::string>>> next;
    for (auto& [path, word] : layer) {
      if (seen.insert(word).second) {
        if (t.words.size() >= max_words) {
          t.words_truncated = true;
        } else {
          t.words.push_back(word);
        }
      }
      if (len == n) continue;
      int last = path.back();
      for (std::size_t y = 0; y < idx.size(); ++y) {
        if (!t.transitions[last][y]) continue;
        auto w2 = word;
        w2.push_back(t.state_labels[y]);
        // States with equal labels and endpoint give the same future words.
        if (!frontier_keys.insert({static_cast<int>(y), w2}).second) continue;
        next.push_back({{static_cast<int>(y)}, std::move(w2)});
      }
    }
    layer = std::move(next);
    if (t.words_truncated) break;
  }
  t.closed_counts.push_back(static_cast<std::int64_t>(idx.size()));
  IntMatrix power = t.transitions;
  for (int k = 1; k <= n; ++k) {
    t.closed_counts.push_back(trace(power));
    if (k < n) power = matrix_power(t.transitions, k + 1);
  }
  return t;
}

std::string itinerary_dot(const ItineraryTable& t) {
  std::ostringstream os;
  os << "digraph itinerary {\n";
  for (std::size_t s = 0; s < t.state_labels.size(); ++s)
    os << "  s" << s << " [label=\"" << (t.state_labels[s].empty() ? "?" : t.state_labels[s])
       << "\"];\n";
  for (std::size_t x = 0; x < t.transitions.size(); ++x)
    for (std::size_t y = 0; y < t.transitions.size(); ++y)
      if (t.transitions[x][y]) os << "  s" << x << " -> s" << y << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace graphrep
