#include <sstream>

#include "graphrep/graph.hpp"

namespace graphrep {

VertexId path_start(const ControlledRibbonGraph& g, const EdgePath& p) {
  return p.darts.empty() ? p.anchor : g.origin(p.darts.front());
}

VertexId path_end(const ControlledRibbonGraph& g, const EdgePath& p) {
  return p.darts.empty() ? p.anchor : g.target(p.darts.back());
}

EdgePath make_path(const ControlledRibbonGraph& g, std::vector<Dart> darts) {
  EdgePath p;
  p.anchor = darts.empty() ? -1 : g.origin(darts.front());
  p.darts = std::move(darts);
  return p;
}

EdgePath reversed(const ControlledRibbonGraph& g, const EdgePath& p) {
  EdgePath r;
  r.anchor = path_end(g, p);
  r.darts.reserve(p.darts.size());
  for (auto it = p.darts.rbegin(); it != p.darts.rend(); ++it)
    r.darts.push_back(g.rev(*it));
  return r;
}

EdgePath concat(const ControlledRibbonGraph& g, const EdgePath& a,
                const EdgePath& b) {
  EdgePath r;
  r.anchor = a.darts.empty() && a.anchor < 0 ? path_start(g, b) : path_start(g, a);
  r.darts = a.darts;
  r.darts.insert(r.darts.end(), b.darts.begin(), b.darts.end());
  return r;
}

bool is_continuous(const ControlledRibbonGraph& g, const EdgePath& p) {
  for (std::size_t i = 0; i + 1 < p.darts.size(); ++i)
    if (g.target(p.darts[i]) != g.origin(p.darts[i + 1])) return false;
  if (!p.darts.empty() && p.anchor >= 0 && g.origin(p.darts.front()) != p.anchor)
    return false;
  return true;
}

EdgePath tighten_path(const ControlledRibbonGraph& g, const EdgePath& p) {
  EdgePath r;
  r.anchor = path_start(g, p);
  r.darts.reserve(p.darts.size());
  for (Dart d : p.darts) {
    if (!r.darts.empty() && r.darts.back() == g.rev(d) &&
        !g.vertex_marked(g.origin(d))) {
      r.darts.pop_back();
    } else {
      r.darts.push_back(d);
    }
  }
  return r;
}

bool is_tight(const ControlledRibbonGraph& g, const EdgePath& p) {
  for (std::size_t i = 0; i + 1 < p.darts.size(); ++i)
    if (p.darts[i + 1] == g.rev(p.darts[i]) && !g.vertex_marked(g.origin(p.darts[i + 1])))
      return false;
  return true;
}

std::string path_to_string(const ControlledRibbonGraph& g, const EdgePath& p) {
  if (p.darts.empty()) return "·";
  std::string s;
  for (std::size_t i = 0; i < p.darts.size(); ++i) {
    if (i) s += ' ';
    s += g.dart_name(p.darts[i]);
  }
  return s;
}

std::optional<EdgePath> parse_path(const ControlledRibbonGraph& g,
                                   const std::string& text, std::string* error) {
  std::istringstream is(text);
  std::string tok;
  EdgePath p;
  while (is >> tok) {
    if (tok == "·" || tok == "." || tok == "1") continue;
    auto d = g.find_dart(tok);
    if (!d) {
      if (error) *error = "unknown edge '" + tok + "'";
      return std::nullopt;
    }
    p.darts.push_back(*d);
  }
  p.anchor = p.darts.empty() ? -1 : g.origin(p.darts.front());
  if (!is_continuous(g, p)) {
    if (error) *error = "path is not continuous: " + text;
    return std::nullopt;
  }
  return p;
}

}  // namespace graphrep
