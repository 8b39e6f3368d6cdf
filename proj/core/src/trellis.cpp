#include "graphrep/trellis.hpp"

#include <algorithm>
#include <set>

#include "graphrep/moves.hpp"

namespace graphrep {

const char* to_string(BranchSlot s) {
  switch (s) {
    case BranchSlot::UnstablePlus: return "U+";
    case BranchSlot::StablePlus: return "S+";
    case BranchSlot::UnstableMinus: return "U-";
    case BranchSlot::StableMinus: return "S-";
  }
  return "?";
}

std::optional<BranchSlot> parse_branch_slot(const std::string& s) {
  if (s == "U+") return BranchSlot::UnstablePlus;
  if (s == "S+") return BranchSlot::StablePlus;
  if (s == "U-") return BranchSlot::UnstableMinus;
  if (s == "S-") return BranchSlot::StableMinus;
  return std::nullopt;
}

const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::Rectangle: return "rectangle";
    case RegionKind::Bigon: return "bigon";
    case RegionKind::OtherDisc: return "other-disc";
    case RegionKind::Annulus: return "annulus";
    case RegionKind::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

std::string end_name(const Branch& b) { return b.point + "." + to_string(b.slot) + ".end"; }

// Vertex chain of a branch, from the periodic point outward.
std::vector<std::string> chain(const Branch& b) {
  std::vector<std::string> c{b.point};
  c.insert(c.end(), b.crossings.begin(), b.crossings.end());
  if (is_unstable(b.slot) || b.open_end) c.push_back(end_name(b));
  return c;
}

[[noreturn]] void inconsistent(const std::string& what) {
  throw Error("inconsistent map data: " + what);
}

// The trellis as a planar graph: stable segments are control-kind edges,
// unstable pieces free edges.
struct Arrangement {
  ControlledRibbonGraph g;
  std::map<std::string, const Branch*> unstable_branch_of;  // crossing -> branch
  std::map<std::string, const Branch*> piece_branch;        // piece -> branch
  std::map<std::pair<std::string, BranchSlot>, Dart> first_dart;
  std::vector<Dart> u_out, u_in;  // per vertex, kNoDart when absent
  std::vector<char> is_end;
  std::vector<std::vector<Dart>> faces;
  std::vector<int> face_of;

  bool stable(Dart d) const { return g.is_control(edge_of(d)); }
  VertexId vertex(const std::string& n) const {
    auto v = g.find_vertex(n);
    if (!v) inconsistent("unknown vertex " + n);
    return *v;
  }
  EdgeId edge(const std::string& n) const {
    auto e = g.find_edge(n);
    if (!e) inconsistent("unknown segment " + n);
    return *e;
  }
  Dart side(const std::string& ref) const {
    auto d = g.find_dart(ref);
    if (!d) throw Error("unknown side " + ref);
    return *d;
  }
  int left_face(EdgeId s) const { return face_of[backward_dart(s)]; }
  int right_face(EdgeId s) const { return face_of[forward_dart(s)]; }
};

Arrangement build_arrangement(const TrellisEncoding& t) {
  {
    auto r = validate_trellis(t);
    if (!r.ok()) throw Error("invalid trellis: " + r.to_string());
  }
  Arrangement a;
  auto& g = a.g;
  for (const auto& p : t.points) g.add_vertex(p.name);
  for (const auto& b : t.branches)
    if (is_unstable(b.slot))
      for (const auto& c : b.crossings) {
        g.add_vertex(c);
        a.unstable_branch_of[c] = &b;
      }
  for (const auto& b : t.branches)
    if (is_unstable(b.slot) || b.open_end) g.add_vertex(end_name(b));
  struct Slots {
    Dart u_out = kNoDart, u_in = kNoDart, s_out = kNoDart, s_in = kNoDart;
  };
  std::vector<Slots> slots(g.vertex_slots());
  for (const auto& b : t.branches) {
    auto c = chain(b);
    bool unstable = is_unstable(b.slot);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      VertexId from = *g.find_vertex(c[i]), to = *g.find_vertex(c[i + 1]);
      std::string name = (unstable ? "u:" : "") + c[i] + "-" + c[i + 1];
      EdgeId e = g.add_edge(name, unstable ? EdgeKind::Free : EdgeKind::Control, from, to,
                            unstable ? "" : "w" + name);
      if (unstable) a.piece_branch[name] = &b;
      if (i == 0) a.first_dart[{b.point, b.slot}] = forward_dart(e);
      (unstable ? slots[from].u_out : slots[from].s_out) = forward_dart(e);
      (unstable ? slots[to].u_in : slots[to].s_in) = backward_dart(e);
    }
  }
  a.u_out.assign(g.vertex_slots(), kNoDart);
  a.u_in.assign(g.vertex_slots(), kNoDart);
  a.is_end.assign(g.vertex_slots(), 0);
  std::set<std::string> point_names;
  for (const auto& p : t.points) point_names.insert(p.name);
  for (VertexId v : g.vertices()) {
    const auto& name = g.vertex_name(v);
    std::vector<Dart> rot;
    if (point_names.count(name)) {
      for (BranchSlot s : {BranchSlot::UnstablePlus, BranchSlot::StablePlus,
                           BranchSlot::UnstableMinus, BranchSlot::StableMinus}) {
        auto it = a.first_dart.find({name, s});
        if (it != a.first_dart.end()) rot.push_back(it->second);
      }
    } else {
      const Slots& s = slots[v];
      a.u_out[v] = s.u_out;
      a.u_in[v] = s.u_in;
      auto sg = t.signs.find(name);
      if (sg == t.signs.end()) {
        a.is_end[v] = 1;
        for (Dart d : {s.u_out, s.u_in, s.s_out, s.s_in})
          if (d != kNoDart) rot.push_back(d);
      } else if (sg->second > 0) {
        for (Dart d : {s.u_out, s.s_out, s.u_in, s.s_in})
          if (d != kNoDart) rot.push_back(d);
      } else {
        for (Dart d : {s.u_out, s.s_in, s.u_in, s.s_out})
          if (d != kNoDart) rot.push_back(d);
      }
    }
    g.set_rotation(v, rot);
  }
  a.faces = trace_boundary_loops(g);
  a.face_of.assign(g.dart_slots(), -1);
  for (std::size_t f = 0; f < a.faces.size(); ++f)
    for (Dart d : a.faces[f]) a.face_of[d] = static_cast<int>(f);
  int v = g.vertex_count(), e = g.edge_count(), f = static_cast<int>(a.faces.size());
  if (v - e + f != 2 * connected_components(g)) throw Error("non-planar data");
  return a;
}

std::vector<std::string> face_labels(const TrellisEncoding& t, const Arrangement& a) {
  std::vector<std::string> labels(a.faces.size());
  for (const auto& [label, ref] : t.region_labels) {
    int f = a.face_of[a.side(ref)];
    if (!labels[f].empty() && labels[f] != label)
      throw Error("region labelled twice: " + labels[f] + " and " + label);
    labels[f] = label;
  }
  std::set<std::string> used(labels.begin(), labels.end());
  int k = 0;
  for (auto& l : labels)
    if (l.empty()) {
      while (used.count("F" + std::to_string(k))) ++k;
      l = "F" + std::to_string(k++);
    }
  return labels;
}

// Index in the face trace of the side carrying each puncture.
std::map<int, std::vector<const Puncture*>> punctures_by_face(const TrellisEncoding& t,
                                                              const Arrangement& a) {
  std::map<int, std::vector<const Puncture*>> out;
  for (const auto& p : t.punctures) out[a.face_of[a.side(p.side)]].push_back(&p);
  return out;
}

std::string control_name(const ControlledRibbonGraph& ag, EdgeId s) {
  std::string n = ag.edge_name(s);
  n.erase(std::remove(n.begin(), n.end(), '-'), n.end());
  return "z" + n;
}

// Compatible graph together with the lookup tables used by the map.
struct Compatible {
  ControlledRibbonGraph g;
  std::vector<VertexId> hub;                // per face
  std::vector<EdgeId> control;              // per arrangement edge (stable only)
  std::vector<VertexId> port_left, port_right;
  std::vector<EdgeId> spoke_of_port;        // per graph vertex
  std::vector<std::vector<EdgeId>> spokes;  // per face, in trace order of stable sides
  std::vector<std::vector<int>> spoke_pos;  // per face, trace index of each stable side
  std::map<std::string, EdgeId> loop;       // puncture -> loop edge
  std::map<std::string, int> loop_face;
};

Compatible build(const TrellisEncoding& t, const Arrangement& a) {
  Compatible c;
  auto& g = c.g;
  const auto& ag = a.g;
  auto labels = face_labels(t, a);
  if (connected_components(ag) > 1) throw Error("unsupported face topology");
  for (std::size_t f = 0; f < a.faces.size(); ++f) c.hub.push_back(g.add_vertex(labels[f]));
  c.control.assign(ag.edge_slots(), -1);
  c.port_left.assign(ag.edge_slots(), -1);
  c.port_right.assign(ag.edge_slots(), -1);
  for (EdgeId s : ag.edges()) {
    if (!ag.is_control(s)) continue;
    std::string z = control_name(ag, s);
    c.port_left[s] = g.add_vertex(z + ".l");
    c.port_right[s] = g.add_vertex(z + ".r");
    c.control[s] = g.add_edge(z, EdgeKind::Control, c.port_left[s], c.port_right[s],
                              "w" + z.substr(1));
  }
  c.spokes.resize(a.faces.size());
  c.spoke_pos.resize(a.faces.size());
  std::map<VertexId, EdgeId> spoke_of;
  for (std::size_t f = 0; f < a.faces.size(); ++f) {
    const auto& trace = a.faces[f];
    for (std::size_t i = 0; i < trace.size(); ++i) {
      Dart d = trace[i];
      if (!a.stable(d)) continue;
      EdgeId s = edge_of(d);
      VertexId port = is_backward(d) ? c.port_left[s] : c.port_right[s];
      EdgeId sp = g.add_edge(labels[f] + "." + g.edge_name(c.control[s]), EdgeKind::Free,
                             c.hub[f], port);
      spoke_of[port] = sp;
      c.spokes[f].push_back(sp);
      c.spoke_pos[f].push_back(static_cast<int>(i));
    }
  }
  auto by_face = punctures_by_face(t, a);
  for (std::size_t f = 0; f < a.faces.size(); ++f) {
    // Anticlockwise at the hub: reverse trace order, loops after their side.
    std::vector<Dart> rot;
    const auto& sp = c.spokes[f];
    std::vector<std::vector<EdgeId>> loops_after(sp.size() + 1);
    auto it = by_face.find(static_cast<int>(f));
    if (it != by_face.end())
      for (const Puncture* p : it->second) {
        const auto& trace = a.faces[f];
        int at = static_cast<int>(std::find(trace.begin(), trace.end(), a.side(p->side)) -
                                  trace.begin());
        int idx = -1;
        for (std::size_t k = 0; k < sp.size(); ++k)
          if (c.spoke_pos[f][k] <= at) idx = static_cast<int>(k);
        if (idx < 0 && !sp.empty()) idx = static_cast<int>(sp.size()) - 1;
        EdgeId l = g.add_edge(p->name, EdgeKind::Peripheral, c.hub[f], c.hub[f]);
        c.loop[p->name] = l;
        c.loop_face[p->name] = static_cast<int>(f);
        loops_after[idx < 0 ? sp.size() : idx].push_back(l);
      }
    for (std::size_t k = sp.size(); k-- > 0;) {
      for (EdgeId l : loops_after[k]) {
        rot.push_back(backward_dart(l));
        rot.push_back(forward_dart(l));
      }
      rot.push_back(forward_dart(sp[k]));
    }
    for (EdgeId l : loops_after[sp.size()]) {
      rot.push_back(backward_dart(l));
      rot.push_back(forward_dart(l));
    }
    g.set_rotation(c.hub[f], rot);
  }
  c.spoke_of_port.assign(g.vertex_slots(), -1);
  for (auto [port, sp] : spoke_of) c.spoke_of_port[port] = sp;
  for (EdgeId s : ag.edges()) {
    if (!ag.is_control(s)) continue;
    for (VertexId port : {c.port_left[s], c.port_right[s]}) {
      Dart zd = port == c.port_left[s] ? forward_dart(c.control[s]) : backward_dart(c.control[s]);
      g.set_rotation(port, {forward_dart(c.spoke_of_port[port]) ^ 1, zd});
    }
  }
  return c;
}

struct Crossing {
  EdgeId segment;  // arrangement edge
  bool forward;    // from the left face of the segment to the right face
};

class MapBuilder {
 public:
  MapBuilder(const Trellis& t, const Arrangement& a, const Compatible& c)
      : t_(t), a_(a), c_(c) {}

  EdgeId segment_image(EdgeId s) const {
    auto it = t_.map.stable_segment_image.find(a_.g.edge_name(s));
    if (it == t_.map.stable_segment_image.end())
      inconsistent("no image for stable segment " + a_.g.edge_name(s));
    return a_.edge(it->second);
  }

  ImagePoint vertex_image(VertexId x) const {
    const auto& n = a_.g.vertex_name(x);
    for (const auto& p : t_.encoding.points)
      if (p.name == n) return ImagePoint{p.image, "", 0};
    auto it = t_.map.vertex_image.find(n);
    if (it == t_.map.vertex_image.end()) inconsistent("no image for vertex " + n);
    return it->second;
  }

  const Branch& image_branch(const Branch& b) const {
    const std::string* img = nullptr;
    for (const auto& p : t_.encoding.points)
      if (p.name == b.point) img = &p.image;
    for (const auto& o : t_.encoding.branches)
      if (img && o.point == *img && o.slot == b.slot) return o;
    inconsistent("no image branch for " + b.point + " " + to_string(b.slot));
  }

  // Dart at image vertex c along the unstable branch `br`, pointing outward or inward.
  Dart along(VertexId c, const Branch& br, bool outward) const {
    const auto& n = a_.g.vertex_name(c);
    if (n == br.point) {
      if (!outward) inconsistent("image curve enters " + n + " from inside");
      return a_.first_dart.at({br.point, br.slot});
    }
    auto it = a_.unstable_branch_of.find(n);
    if (it == a_.unstable_branch_of.end() || it->second != &br)
      inconsistent("vertex " + n + " is not on the image branch");
    return outward ? a_.u_out[c] : a_.u_in[c];
  }

  Dart stable_dart_at(VertexId c, EdgeId t) const {
    if (a_.g.origin(forward_dart(t)) == c) return forward_dart(t);
    if (a_.g.origin(backward_dart(t)) == c) return backward_dart(t);
    inconsistent("vertex " + a_.g.vertex_name(c) + " is not an end of segment " +
                 a_.g.edge_name(t));
  }

  // Crossings of a curve passing c from a_in to a_out on its right side.
  void sweep(VertexId c, Dart in, Dart out, std::vector<Crossing>& acc) const {
    for (Dart x = a_.g.succ(in); x != out; x = a_.g.succ(x)) {
      if (x == in) inconsistent("curve does not leave " + a_.g.vertex_name(c));
      if (!a_.stable(x))
        inconsistent("pushed curve crosses the unstable set at " + a_.g.vertex_name(c));
      acc.push_back({edge_of(x), is_backward(x)});
    }
  }

  // Dart at the image vertex along the image of arrangement dart d, pointing
  // back along the curve (arriving) or forward (leaving).
  Dart image_dart(Dart d, VertexId c, bool arriving) const {
    if (a_.stable(d)) {
      EdgeId t = segment_image(edge_of(d));
      return stable_dart_at(c, t);
    }
    const Branch& br = image_branch(*a_.piece_branch.at(a_.g.edge_name(edge_of(d))));
    bool outward_travel = !is_backward(d);
    return along(c, br, arriving ? !outward_travel : outward_travel);
  }

  void piece_crossings(Dart d, std::vector<Crossing>& acc) const {
    const auto& name = a_.g.edge_name(edge_of(d));
    const Branch& br = image_branch(*a_.piece_branch.at(name));
    std::vector<ImagePoint> pts;
    auto it = t_.map.piece_image.find(name);
    if (it != t_.map.piece_image.end()) pts = it->second;
    bool outward = !is_backward(d);
    if (!outward) std::reverse(pts.begin(), pts.end());
    for (const auto& p : pts) {
      if (p.is_new()) {
        acc.push_back({a_.edge(p.segment), (p.sign > 0) == outward});
      } else {
        VertexId c = a_.vertex(p.vertex);
        sweep(c, along(c, br, !outward), along(c, br, outward), acc);
      }
    }
  }

  void vertex_crossings(Dart in, Dart out, std::vector<Crossing>& acc) const {
    VertexId x = a_.g.target(in);
    if (a_.is_end[x]) return;
    ImagePoint p = vertex_image(x);
    bool straight = !a_.stable(in) && !a_.stable(out);
    if (p.is_new()) {
      if (straight) acc.push_back({a_.edge(p.segment), (p.sign > 0) == !is_backward(in)});
      return;
    }
    VertexId c = a_.vertex(p.vertex);
    sweep(c, image_dart(in, c, true), image_dart(out, c, false), acc);
  }

  VertexId port(EdgeId s, bool left) const { return left ? c_.port_left[s] : c_.port_right[s]; }

  // Port of the image of a stable side (face on the right of d).
  VertexId image_port(Dart d, int* face) const {
    EdgeId t = segment_image(edge_of(d));
    Dart td = is_backward(d) ? backward_dart(t) : forward_dart(t);
    *face = a_.face_of[td];
    return port(t, is_backward(d));
  }

  void walk(VertexId from, VertexId to, std::vector<Dart>& out) const {
    if (from == to) return;
    out.push_back(backward_dart(c_.spoke_of_port[from]));
    out.push_back(forward_dart(c_.spoke_of_port[to]));
  }

  // Path from `start` (in face `face`) through the crossings, ending at `end`
  // in face `end_face`.
  EdgePath follow(VertexId start, int face, const std::vector<Crossing>& xs, VertexId end,
                  int end_face) const {
    std::vector<Dart> darts;
    VertexId cur = start;
    for (const auto& x : xs) {
      int from = x.forward ? a_.left_face(x.segment) : a_.right_face(x.segment);
      if (from != face)
        inconsistent("crossing of " + a_.g.edge_name(x.segment) + " from the wrong region");
      walk(cur, port(x.segment, x.forward), darts);
      EdgeId z = c_.control[x.segment];
      darts.push_back(x.forward ? forward_dart(z) : backward_dart(z));
      cur = port(x.segment, !x.forward);
      face = x.forward ? a_.right_face(x.segment) : a_.left_face(x.segment);
    }
    if (face != end_face) inconsistent("image arc ends in the wrong region");
    walk(cur, end, darts);
    if (darts.empty()) return EdgePath::trivial(start);
    return tighten_path(c_.g, make_path(c_.g, darts));
  }

  ControlledGraphMap run() const {
    ControlledGraphMap m;
    m.graph = c_.g;
    const auto& g = c_.g;
    m.vertex_image.assign(g.vertex_slots(), -1);
    m.edge_image.assign(g.edge_slots(), EdgePath{});
    for (EdgeId s : a_.g.edges()) {
      if (!a_.g.is_control(s)) continue;
      EdgeId t = segment_image(s);
      m.vertex_image[c_.port_left[s]] = c_.port_left[t];
      m.vertex_image[c_.port_right[s]] = c_.port_right[t];
      m.edge_image[c_.control[s]] = make_path(g, {forward_dart(c_.control[t])});
    }
    for (std::size_t f = 0; f < a_.faces.size(); ++f) {
      const auto& trace = a_.faces[f];
      const auto& sp = c_.spokes[f];
      if (sp.empty()) {
        // Hub maps to the hub of the region of an image puncture.
        VertexId img = -1;
        for (const auto& p : t_.encoding.punctures)
          if (c_.loop_face.at(p.name) == static_cast<int>(f))
            img = c_.hub[c_.loop_face.at(p.image)];
        if (img < 0) inconsistent("region without stable sides or punctures");
        m.vertex_image[c_.hub[f]] = img;
        continue;
      }
      int j0 = c_.spoke_pos[f][0];
      int face0;
      VertexId start = image_port(trace[j0], &face0);
      // A hub carrying a puncture maps to the hub of the image puncture so
      // that peripheral loops map onto peripheral loops.
      std::vector<Dart> prefix;
      VertexId hub_image = start;
      for (const auto& p : t_.encoding.punctures) {
        if (c_.loop_face.at(p.name) != static_cast<int>(f)) continue;
        int target = c_.loop_face.at(p.image);
        if (target != face0)
          inconsistent("puncture " + p.name + " does not map into the region of " + p.image);
        hub_image = c_.hub[target];
        prefix.push_back(forward_dart(c_.spoke_of_port[start]));
        break;
      }
      m.vertex_image[c_.hub[f]] = hub_image;
      m.edge_image[sp[0]] =
          prefix.empty() ? EdgePath::trivial(start) : make_path(c_.g, prefix);
      std::vector<Crossing> xs;
      int n = static_cast<int>(trace.size());
      int k = j0;
      for (std::size_t i = 1; i < sp.size(); ++i) {
        int ji = c_.spoke_pos[f][i];
        for (; k < ji; ++k) {
          if (k != j0 && !a_.stable(trace[k])) piece_crossings(trace[k], xs);
          vertex_crossings(trace[k], trace[(k + 1) % n], xs);
        }
        int end_face;
        VertexId end = image_port(trace[ji], &end_face);
        EdgePath tail = follow(start, face0, xs, end, end_face);
        std::vector<Dart> full = prefix;
        full.insert(full.end(), tail.darts.begin(), tail.darts.end());
        m.edge_image[sp[i]] = full.empty() ? EdgePath::trivial(hub_image)
                                           : tighten_path(c_.g, make_path(c_.g, full));
      }
    }
    for (const auto& p : t_.encoding.punctures) {
      EdgeId l = c_.loop.at(p.name);
      if (!p.image_word.empty()) {
        std::string err;
        auto w = parse_path(g, p.image_word, &err);
        if (!w) inconsistent("image word of " + p.name + ": " + err);
        m.edge_image[l] = *w;
        continue;
      }
      m.edge_image[l] = make_path(g, {forward_dart(c_.loop.at(p.image))});
    }
    for (VertexId v : g.vertices())
      if (m.vertex_image[v] < 0) inconsistent("vertex " + g.vertex_name(v) + " left unmapped");
    return m;
  }

 private:
  const Trellis& t_;
  const Arrangement& a_;
  const Compatible& c_;
};

}  // namespace

std::vector<std::string> stable_segments(const TrellisEncoding& t) {
  std::vector<std::string> out;
  for (const auto& b : t.branches) {
    if (is_unstable(b.slot)) continue;
    auto c = chain(b);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back(c[i] + "-" + c[i + 1]);
  }
  return out;
}

std::vector<std::string> unstable_pieces(const TrellisEncoding& t) {
  std::vector<std::string> out;
  for (const auto& b : t.branches) {
    if (!is_unstable(b.slot)) continue;
    auto c = chain(b);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back("u:" + c[i] + "-" + c[i + 1]);
  }
  return out;
}

ValidationReport validate_trellis(const TrellisEncoding& t) {
  ValidationReport r;
  std::map<std::string, const PeriodicPoint*> points;
  for (const auto& p : t.points) {
    if (!points.emplace(p.name, &p).second) r.add("duplicate point", p.name);
    if (p.period < 1) r.add("bad period", p.name);
  }
  for (const auto& p : t.points) {
    if (!points.count(p.image)) {
      r.add("unknown point image", p.name + " -> " + p.image);
      continue;
    }
    std::string cur = p.name;
    for (int i = 0; i < p.period && points.count(cur); ++i) cur = points[cur]->image;
    if (cur != p.name) r.add("period mismatch", p.name);
  }
  std::map<std::string, int> in_unstable, in_stable;
  std::set<std::pair<std::string, BranchSlot>> seen;
  for (const auto& b : t.branches) {
    if (!points.count(b.point)) r.add("unknown branch point", b.point);
    if (!seen.insert({b.point, b.slot}).second)
      r.add("duplicate branch", b.point + " " + to_string(b.slot));
    for (const auto& c : b.crossings) {
      if (points.count(c)) r.add("crossing named like a point", c);
      (is_unstable(b.slot) ? in_unstable : in_stable)[c]++;
    }
    if (is_unstable(b.slot) && !b.open_end)
      r.add("improper trellis", "unstable branch at " + b.point + " ends on the stable set");
    if (!is_unstable(b.slot) && b.open_end)
      r.add("improper trellis", "stable branch at " + b.point + " ends off the unstable set");
    if (!is_unstable(b.slot) && b.crossings.empty())
      r.add("improper trellis", "stable branch at " + b.point + " has no crossing");
  }
  std::set<std::string> all;
  for (auto& [c, n] : in_unstable) all.insert(c);
  for (auto& [c, n] : in_stable) all.insert(c);
  for (const auto& c : all) {
    if (in_unstable[c] != 1) r.add("crossing not on exactly one unstable branch", c);
    if (in_stable[c] != 1) r.add("crossing not on exactly one stable branch", c);
    auto s = t.signs.find(c);
    if (s == t.signs.end() || (s->second != 1 && s->second != -1))
      r.add("crossing not transverse", c);
  }
  for (const auto& [c, s] : t.signs)
    if (!all.count(c)) r.add("sign for unknown crossing", c);
  auto pieces = unstable_pieces(t);
  auto segs = stable_segments(t);
  std::set<std::string> sides(pieces.begin(), pieces.end());
  sides.insert(segs.begin(), segs.end());
  auto known_side = [&](std::string s) {
    if (!s.empty() && s[0] == '~') s.erase(0, 1);
    return sides.count(s) > 0;
  };
  std::set<std::string> punct;
  for (const auto& p : t.punctures) {
    if (!punct.insert(p.name).second) r.add("duplicate puncture", p.name);
    if (!known_side(p.side)) r.add("unknown puncture side", p.name + ": " + p.side);
  }
  for (const auto& p : t.punctures)
    if (!punct.count(p.image)) r.add("unknown puncture image", p.name + " -> " + p.image);
  for (const auto& [label, side] : t.region_labels)
    if (!known_side(side)) r.add("unknown region side", label + ": " + side);
  return r;
}

ValidationReport validate_trellis_map(const Trellis& tr) {
  ValidationReport r = validate_trellis(tr.encoding);
  if (!r.ok()) return r;
  const auto& t = tr.encoding;
  const auto& m = tr.map;
  auto segs = stable_segments(t);
  std::set<std::string> seg_set(segs.begin(), segs.end());
  std::set<std::string> points, crossings;
  for (const auto& p : t.points) points.insert(p.name);
  for (const auto& [c, s] : t.signs) crossings.insert(c);
  for (const auto& s : segs) {
    auto it = m.stable_segment_image.find(s);
    if (it == m.stable_segment_image.end())
      r.add("missing stable image", s);
    else if (!seg_set.count(it->second))
      r.add("unknown stable image", s + " -> " + it->second);
  }
  auto check_point = [&](const std::string& where, const ImagePoint& p) {
    if (p.is_new()) {
      if (!seg_set.count(p.segment)) r.add("unknown segment", where + ": " + p.segment);
      if (p.sign != 1 && p.sign != -1) r.add("crossing not transverse", where);
    } else if (!crossings.count(p.vertex) && !points.count(p.vertex)) {
      r.add("unknown vertex", where + ": " + p.vertex);
    }
  };
  for (const auto& c : crossings) {
    auto it = m.vertex_image.find(c);
    if (it == m.vertex_image.end()) {
      r.add("missing vertex image", c);
      continue;
    }
    check_point(c, it->second);
  }
  // f(T^S) inside T^S: a crossing maps onto the images of its stable segments.
  for (const auto& b : t.branches) {
    if (is_unstable(b.slot)) continue;
    auto c = chain(b);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      std::string s = c[i] + "-" + c[i + 1];
      auto si = m.stable_segment_image.find(s);
      if (si == m.stable_segment_image.end()) continue;
      const std::string& img = si->second;
      auto dash = img.find('-');
      for (const auto& x : {c[i], c[i + 1]}) {
        ImagePoint p;
        if (points.count(x)) {
          for (const auto& q : t.points)
            if (q.name == x) p.vertex = q.image;
        } else {
          auto vi = m.vertex_image.find(x);
          if (vi == m.vertex_image.end()) continue;
          p = vi->second;
        }
        bool ok = p.is_new() ? p.segment == img
                             : (img.substr(0, dash) == p.vertex || img.substr(dash + 1) == p.vertex);
        if (!ok) r.add("stable set not invariant", x + " on " + s + " -> " + img);
      }
    }
  }
  auto pieces = unstable_pieces(t);
  std::set<std::string> piece_set(pieces.begin(), pieces.end());
  for (const auto& [piece, pts] : m.piece_image) {
    if (!piece_set.count(piece)) r.add("unknown unstable piece", piece);
    for (const auto& p : pts) check_point(piece, p);
  }
  for (const auto& [s, img] : m.stable_segment_image)
    if (!seg_set.count(s)) r.add("unknown stable segment", s);
  return r;
}

RegionDecomposition compute_regions(const TrellisEncoding& t) {
  Arrangement a = build_arrangement(t);
  auto labels = face_labels(t, a);
  RegionDecomposition out;
  out.vertices = a.g.vertex_count();
  out.edges = a.g.edge_count();
  auto by_face = punctures_by_face(t, a);
  for (std::size_t f = 0; f < a.faces.size(); ++f) {
    Region r;
    r.label = labels[f];
    const auto& trace = a.faces[f];
    for (Dart d : trace) r.boundary.push_back(a.g.dart_name(d));
    // Sides are maximal runs of darts of one kind.
    int n = static_cast<int>(trace.size());
    for (int i = 0; i < n; ++i) {
      bool s = a.stable(trace[i]);
      bool prev = a.stable(trace[(i + n - 1) % n]);
      if (n == 1 || s != prev) (s ? r.stable_sides : r.unstable_sides)++;
    }
    bool infinite = false;
    auto it = by_face.find(static_cast<int>(f));
    if (it != by_face.end())
      for (const Puncture* p : it->second) {
        r.punctures.push_back(p->name);
        infinite = infinite || p->at_infinity;
      }
    if (infinite)
      r.kind = RegionKind::Unbounded;
    else if (!r.punctures.empty())
      r.kind = RegionKind::Annulus;
    else if (r.stable_sides == 2 && r.unstable_sides == 2)
      r.kind = RegionKind::Rectangle;
    else if (r.stable_sides == 1 && r.unstable_sides == 1)
      r.kind = RegionKind::Bigon;
    else
      r.kind = RegionKind::OtherDisc;
    out.regions.push_back(std::move(r));
  }
  return out;
}

ControlledRibbonGraph build_compatible_graph(const TrellisEncoding& t) {
  Arrangement a = build_arrangement(t);
  return build(t, a).g;
}

ControlledGraphMap derive_raw_map(const Trellis& t) {
  auto r = validate_trellis_map(t);
  if (!r.ok()) throw Error("inconsistent map data: " + r.to_string());
  Arrangement a = build_arrangement(t.encoding);
  Compatible c = build(t.encoding, a);
  return MapBuilder(t, a, c).run();
}

ControlledGraphMap derive_initial_map(const Trellis& t) {
  ControlledGraphMap m = derive_raw_map(t);
  auto r = validate_map(m);
  if (!r.ok()) throw Error("inconsistent map data: " + r.to_string());
  MoveResult tidied = tidy(m);
  if (!tidied.ok()) throw Error(tidied.error);
  return tidied.map;
}

RegionLabels trellis_region_labels(const TrellisEncoding& t) {
  Arrangement a = build_arrangement(t);
  auto labels = face_labels(t, a);
  RegionLabels out;
  for (EdgeId s : a.g.edges())
    if (a.g.is_control(s))
      out.control_sides[control_name(a.g, s)] = {labels[a.left_face(s)],
                                                  labels[a.right_face(s)]};
  return out;
}

Trellis horseshoe() {
  Trellis t;
  auto& e = t.encoding;
  e.name = "horseshoe";
  e.points = {{"p", 1, "p"}};
  e.branches = {
      {"p", BranchSlot::UnstablePlus, {"a", "b", "c", "d", "e", "f", "g"}, true},
      {"p", BranchSlot::StablePlus, {"g", "d", "c", "b", "e", "f", "a"}, false},
      {"p", BranchSlot::UnstableMinus, {}, true},
  };
  e.signs = {{"a", -1}, {"b", 1}, {"c", -1}, {"d", 1}, {"e", -1}, {"f", 1}, {"g", -1}};
  e.punctures = {{"inf", "~p-g", "inf", true, ""}};
  e.region_labels = {{"R0", "p-g"},  {"R1", "d-c"}, {"R2", "g-d"},   {"R3", "~b-e"},
                     {"B0", "~e-f"}, {"B1", "c-b"}, {"B2", "~d-c"}, {"Rinf", "~p-g"}};
  auto& m = t.map;
  m.stable_segment_image = {{"p-g", "p-g"}, {"g-d", "p-g"}, {"d-c", "p-g"}, {"c-b", "g-d"},
                            {"b-e", "d-c"}, {"e-f", "d-c"}, {"f-a", "d-c"}};
  m.vertex_image = {{"a", {"c", "", 0}},     {"b", {"d", "", 0}},      {"c", {"g", "", 0}},
                    {"d", {"", "p-g", 1}},   {"e", {"", "d-c", -1}},   {"f", {"", "d-c", 1}},
                    {"g", {"", "p-g", -1}}};
  m.piece_image = {
      {"u:p-a", {{"a", "", 0}, {"b", "", 0}}},
      {"u:b-c", {{"e", "", 0}, {"f", "", 0}}},
      {"u:d-e", {{"", "f-a", -1}, {"", "b-e", 1}}},
      {"u:f-g", {{"", "b-e", -1}, {"", "f-a", 1}}},
  };
  return t;
}

Trellis crossing_free_trellis() {
  Trellis t;
  auto& e = t.encoding;
  e.name = "crossing-free";
  e.points = {{"p", 1, "p"}};
  e.branches = {{"p", BranchSlot::UnstablePlus, {}, true},
                {"p", BranchSlot::UnstableMinus, {}, true}};
  e.punctures = {{"inf", "u:p-p.U+.end", "inf", true, ""}};
  return t;
}

}  // namespace graphrep
