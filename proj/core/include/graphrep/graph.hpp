#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphrep {

using Dart = int;
using EdgeId = int;
using VertexId = int;

inline constexpr Dart kNoDart = -1;

inline EdgeId edge_of(Dart d) { return d >> 1; }
inline Dart forward_dart(EdgeId e) { return 2 * e; }
inline Dart backward_dart(EdgeId e) { return 2 * e + 1; }
inline bool is_backward(Dart d) { return (d & 1) != 0; }

enum class EdgeKind { Free, Control, Peripheral };

const char* to_string(EdgeKind k);
std::optional<EdgeKind> parse_edge_kind(const std::string& s);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string rule, std::string detail) {
    violations.push_back({std::move(rule), std::move(detail)});
  }
  bool has(const std::string& rule) const;
  std::string to_string() const;
};

// Surface-embedded graph given by a rotation system. Edges carry a kind and
// control edges carry one marked point. Vertices may be flagged as marked
// (collapsed control edges in topological representatives). Elements can be
// deleted in place; compact() renumbers the survivors.
class ControlledRibbonGraph {
 public:
  VertexId add_vertex(std::string name);
  EdgeId add_edge(std::string name, EdgeKind kind, VertexId from, VertexId to,
                  std::string marked_point = {});
  // Sets the anticlockwise order of outgoing darts at v.
  void set_rotation(VertexId v, std::vector<Dart> order);

  int vertex_slots() const { return static_cast<int>(vname_.size()); }
  int edge_slots() const { return static_cast<int>(ename_.size()); }
  int dart_slots() const { return 2 * edge_slots(); }
  bool vertex_alive(VertexId v) const { return valive_[v] != 0; }
  bool edge_alive(EdgeId e) const { return ealive_[e] != 0; }
  int vertex_count() const;
  int edge_count() const;
  std::vector<VertexId> vertices() const;
  std::vector<EdgeId> edges() const;

  const std::string& vertex_name(VertexId v) const { return vname_[v]; }
  const std::string& edge_name(EdgeId e) const { return ename_[e]; }
  void rename_vertex(VertexId v, std::string n) { vname_[v] = std::move(n); }
  void rename_edge(EdgeId e, std::string n) { ename_[e] = std::move(n); }
  std::string dart_name(Dart d) const;

  EdgeKind kind(EdgeId e) const { return kind_[e]; }
  void set_kind(EdgeId e, EdgeKind k) { kind_[e] = k; }
  bool is_control(EdgeId e) const { return kind_[e] == EdgeKind::Control; }
  bool is_free(EdgeId e) const { return kind_[e] != EdgeKind::Control; }
  const std::string& marked_point(EdgeId e) const { return mark_[e]; }
  void set_marked_point(EdgeId e, std::string m) { mark_[e] = std::move(m); }

  bool vertex_marked(VertexId v) const { return vmarked_[v] != 0; }
  void set_vertex_marked(VertexId v, bool m) { vmarked_[v] = m ? 1 : 0; }

  Dart rev(Dart d) const { return rev_[d]; }
  VertexId origin(Dart d) const { return origin_[d]; }
  VertexId target(Dart d) const { return origin_[rev_[d]]; }
  const std::vector<Dart>& rotation(VertexId v) const { return rot_[v]; }
  int valence(VertexId v) const { return static_cast<int>(rot_[v].size()); }
  int position(Dart d) const { return pos_[d]; }
  Dart succ(Dart d) const;
  Dart pred(Dart d) const;
  bool is_loop(EdgeId e) const {
    return origin_[forward_dart(e)] == origin_[backward_dart(e)];
  }
  bool is_control_vertex(VertexId v) const;

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;
  // Accepts "e", "~e" or "e-bar" style names ("~" prefix means reversed).
  std::optional<Dart> find_dart(const std::string& token) const;

  // Structural edits used by moves.
  void kill_edge(EdgeId e);
  void kill_vertex(VertexId v);
  void set_origin(Dart d, VertexId v) { origin_[d] = v; }
  void set_rev_unchecked(Dart d, Dart r) { rev_[d] = r; }
  std::string fresh_vertex_name(const std::string& stem) const;
  std::string fresh_edge_name(const std::string& stem) const;

 private:
  void reindex(VertexId v);
  std::vector<std::string> vname_;
  std::vector<char> vmarked_, valive_;
  std::vector<std::string> ename_;
  std::vector<EdgeKind> kind_;
  std::vector<std::string> mark_;
  std::vector<char> ealive_;
  std::vector<Dart> rev_;
  std::vector<VertexId> origin_;
  std::vector<std::vector<Dart>> rot_;
  std::vector<int> pos_;
};

struct EdgePath {
  std::vector<Dart> darts;
  VertexId anchor = -1;  // start vertex; the only location of a trivial path

  bool empty() const { return darts.empty(); }
  std::size_t size() const { return darts.size(); }
  static EdgePath trivial(VertexId v) { return EdgePath{{}, v}; }
  bool operator==(const EdgePath& o) const {
    return darts == o.darts && (!darts.empty() || anchor == o.anchor);
  }
};

VertexId path_start(const ControlledRibbonGraph& g, const EdgePath& p);
VertexId path_end(const ControlledRibbonGraph& g, const EdgePath& p);
EdgePath make_path(const ControlledRibbonGraph& g, std::vector<Dart> darts);
EdgePath reversed(const ControlledRibbonGraph& g, const EdgePath& p);
EdgePath concat(const ControlledRibbonGraph& g, const EdgePath& a,
                const EdgePath& b);
bool is_continuous(const ControlledRibbonGraph& g, const EdgePath& p);
// Cancels adjacent (d, rev d) pairs except where the turn-around happens at a
// marked vertex.
EdgePath tighten_path(const ControlledRibbonGraph& g, const EdgePath& p);
bool is_tight(const ControlledRibbonGraph& g, const EdgePath& p);
std::string path_to_string(const ControlledRibbonGraph& g, const EdgePath& p);
std::optional<EdgePath> parse_path(const ControlledRibbonGraph& g,
                                   const std::string& text,
                                   std::string* error = nullptr);

ValidationReport validate_graph(const ControlledRibbonGraph& g);
// Boundary cycles: next(d) = succ(rev d).
std::vector<std::vector<Dart>> trace_boundary_loops(const ControlledRibbonGraph& g);
int euler_characteristic(const ControlledRibbonGraph& g);
int connected_components(const ControlledRibbonGraph& g);

}  // namespace graphrep
