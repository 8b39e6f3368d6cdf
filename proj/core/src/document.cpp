#include "graphrep/document.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace graphrep {

SyntaxError::SyntaxError(int l, int c, const std::string& what)
    : Error("syntax error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + what),
      line(l),
      column(c) {}

SemanticError::SemanticError(const std::string& what, ValidationReport r)
    : Error("semantic error: " + what + (r.ok() ? "" : "\n" + r.to_string())),
      report(std::move(r)) {}

namespace {

struct Token {
  std::string text;
  int column = 1;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    out.push_back({s.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

struct Section {
  Token header;
  std::vector<Line> items;
};

struct Raw {
  DocumentKind kind = DocumentKind::GraphMap;
  std::string name;
  std::vector<std::string> comments;
  std::map<std::string, Section> sections;
};

Raw split_sections(const std::string& text, const std::set<std::string>& graph_sections,
                   const std::set<std::string>& trellis_sections) {
  Raw raw;
  std::istringstream is(text);
  std::string s;
  int no = 0;
  bool have_header = false;
  Section* current = nullptr;
  while (std::getline(is, s)) {
    ++no;
    auto toks = tokenize(s);
    if (toks.empty()) continue;
    if (toks[0].text[0] == '#') {
      if (!have_header) {
        std::size_t h = s.find('#');
        std::string c = s.substr(h + 1);
        if (!c.empty() && c[0] == ' ') c.erase(0, 1);
        raw.comments.push_back(c);
      }
      continue;
    }
    if (!have_header) {
      if (toks[0].text != "graphmap" && toks[0].text != "trellis")
        throw SyntaxError(no, toks[0].column, "expected 'graphmap NAME' or 'trellis NAME'");
      if (toks.size() != 2)
        throw SyntaxError(no, toks.size() < 2 ? static_cast<int>(s.size()) + 1 : toks[2].column,
                          "header takes exactly one name");
      raw.kind = toks[0].text == "graphmap" ? DocumentKind::GraphMap : DocumentKind::Trellis;
      raw.name = toks[1].text;
      have_header = true;
      continue;
    }
    const auto& known = raw.kind == DocumentKind::GraphMap ? graph_sections : trellis_sections;
    if (toks.size() == 1 && toks[0].text.back() == ':' &&
        known.count(toks[0].text.substr(0, toks[0].text.size() - 1))) {
      std::string name = toks[0].text.substr(0, toks[0].text.size() - 1);
      if (raw.sections.count(name)) throw SyntaxError(no, toks[0].column, "repeated section " + name);
      current = &raw.sections[name];
      current->header = toks[0];
      continue;
    }
    if (toks.size() == 1 && toks[0].text.back() == ':' && s.find_first_not_of(" \t") == 0)
      throw SyntaxError(no, toks[0].column, "unknown section " + toks[0].text);
    if (!current) throw SyntaxError(no, toks[0].column, "entry outside of a section");
    current->items.push_back({no, std::move(toks)});
  }
  if (!have_header) throw SyntaxError(1, 1, "empty document");
  return raw;
}

[[noreturn]] void semantic_at(const Line& l, const Token& t, const std::string& what) {
  throw SemanticError("line " + std::to_string(l.number) + ":" + std::to_string(t.column) + ": " +
                      what);
}

void expect_arrow(const Line& l, std::size_t i) {
  if (l.tokens.size() <= i || l.tokens[i].text != "->")
    throw SyntaxError(l.number,
                      l.tokens.size() > i ? l.tokens[i].column : l.tokens.back().column +
                                                                     static_cast<int>(l.tokens.back().text.size()),
                      "expected '->'");
}

bool is_trivial_token(const std::string& s) { return s == "·" || s == "." || s == "1"; }

// "V:" or "V" ":" at the start of an order line; returns index of first dart.
std::size_t split_label(const Line& l, std::string* label) {
  const auto& t = l.tokens;
  if (t[0].text.size() > 1 && t[0].text.back() == ':') {
    *label = t[0].text.substr(0, t[0].text.size() - 1);
    return 1;
  }
  if (t.size() > 1 && t[1].text == ":") {
    *label = t[0].text;
    return 2;
  }
  throw SyntaxError(l.number, t[0].column + static_cast<int>(t[0].text.size()), "expected ':'");
}

ControlledGraphMap build_graphmap(const Raw& raw, bool check) {
  ControlledGraphMap m;
  auto& g = m.graph;
  auto section = [&](const std::string& n) -> const std::vector<Line>& {
    static const std::vector<Line> empty;
    auto it = raw.sections.find(n);
    return it == raw.sections.end() ? empty : it->second.items;
  };
  std::vector<std::pair<const Line*, std::size_t>> vimages;
  for (const auto& l : section("vertices")) {
    const auto& t = l.tokens;
    if (g.find_vertex(t[0].text)) semantic_at(l, t[0], "duplicate vertex name '" + t[0].text + "'");
    VertexId v = g.add_vertex(t[0].text);
    std::size_t i = 1;
    if (i < t.size() && t[i].text == "->") {
      if (i + 1 >= t.size()) throw SyntaxError(l.number, t[i].column, "missing vertex image");
      vimages.push_back({&l, i + 1});
      i += 2;
    }
    if (i < t.size() && t[i].text == "marked") {
      g.set_vertex_marked(v, true);
      ++i;
    }
    if (i < t.size()) throw SyntaxError(l.number, t[i].column, "unexpected '" + t[i].text + "'");
  }
  for (const auto& l : section("edges")) {
    const auto& t = l.tokens;
    if (t.size() < 4 || t.size() > 5)
      throw SyntaxError(l.number, t.back().column, "expected 'NAME KIND FROM TO [MARK]'");
    if (t[0].text[0] == '~') throw SyntaxError(l.number, t[0].column, "edge names may not start with '~'");
    if (g.find_edge(t[0].text)) semantic_at(l, t[0], "duplicate edge name '" + t[0].text + "'");
    auto kind = parse_edge_kind(t[1].text);
    if (!kind) throw SyntaxError(l.number, t[1].column, "unknown edge kind '" + t[1].text + "'");
    auto from = g.find_vertex(t[2].text);
    if (!from) semantic_at(l, t[2], "unknown vertex '" + t[2].text + "'");
    auto to = g.find_vertex(t[3].text);
    if (!to) semantic_at(l, t[3], "unknown vertex '" + t[3].text + "'");
    std::string mark = t.size() == 5 ? t[4].text : "";
    if (!mark.empty() && *kind != EdgeKind::Control)
      throw SyntaxError(l.number, t[4].column, "marked point on a non-control edge");
    g.add_edge(t[0].text, *kind, *from, *to, mark);
  }
  std::vector<char> ordered(g.vertex_slots(), 0);
  for (const auto& l : section("order")) {
    std::string label;
    std::size_t i = split_label(l, &label);
    auto v = g.find_vertex(label);
    if (!v) semantic_at(l, l.tokens[0], "unknown vertex '" + label + "'");
    if (ordered[*v]) semantic_at(l, l.tokens[0], "second order for '" + label + "'");
    ordered[*v] = 1;
    std::vector<Dart> rot;
    for (; i < l.tokens.size(); ++i) {
      auto d = g.find_dart(l.tokens[i].text);
      if (!d) semantic_at(l, l.tokens[i], "unknown dart '" + l.tokens[i].text + "'");
      rot.push_back(*d);
    }
    g.set_rotation(*v, rot);
  }
  for (VertexId v : g.vertices()) {
    if (ordered[v]) continue;
    std::vector<Dart> rot;
    for (Dart d = 0; d < g.dart_slots(); ++d)
      if (g.origin(d) == v) rot.push_back(d);
    g.set_rotation(v, rot);
  }
  m.vertex_image.assign(g.vertex_slots(), -1);
  for (auto [l, i] : vimages) {
    auto w = g.find_vertex(l->tokens[i].text);
    if (!w) semantic_at(*l, l->tokens[i], "unknown vertex '" + l->tokens[i].text + "'");
    m.vertex_image[*g.find_vertex(l->tokens[0].text)] = *w;
  }
  for (VertexId v : g.vertices())
    if (m.vertex_image[v] < 0) throw SemanticError("no image for vertex '" + g.vertex_name(v) + "'");
  m.edge_image.assign(g.edge_slots(), EdgePath{});
  std::vector<char> mapped(g.edge_slots(), 0);
  for (const auto& l : section("map")) {
    const auto& t = l.tokens;
    auto e = g.find_edge(t[0].text);
    if (!e) semantic_at(l, t[0], "unknown edge '" + t[0].text + "'");
    if (mapped[*e]) semantic_at(l, t[0], "second image for '" + t[0].text + "'");
    expect_arrow(l, 1);
    if (t.size() < 3) throw SyntaxError(l.number, t[1].column + 2, "missing image word");
    std::vector<Dart> darts;
    for (std::size_t i = 2; i < t.size(); ++i) {
      if (is_trivial_token(t[i].text)) continue;
      auto d = g.find_dart(t[i].text);
      if (!d) semantic_at(l, t[i], "unknown dart '" + t[i].text + "'");
      darts.push_back(*d);
    }
    EdgePath p = darts.empty() ? EdgePath::trivial(m.vertex_image[g.origin(forward_dart(*e))])
                               : make_path(g, darts);
    if (!is_continuous(g, p)) semantic_at(l, t[2], "image of '" + t[0].text + "' is not a path");
    m.edge_image[*e] = p;
    mapped[*e] = 1;
  }
  for (EdgeId e : g.edges())
    if (!mapped[e]) throw SemanticError("no image for edge '" + g.edge_name(e) + "'");
  auto gr = validate_graph(g);
  if (!gr.ok()) throw SemanticError("invalid graph", gr);
  if (check) {
    auto r = validate_map(m);
    if (!r.ok()) throw SemanticError("invalid graph map", r);
  }
  return m;
}

ImagePoint parse_point(const Line& l, const Token& t) {
  auto at = t.text.rfind('@');
  if (at == std::string::npos) return ImagePoint{t.text, "", 0};
  std::string sign = t.text.substr(at + 1);
  if (sign != "+" && sign != "-")
    throw SyntaxError(l.number, t.column + static_cast<int>(at) + 1, "expected '+' or '-'");
  return ImagePoint{"", t.text.substr(0, at), sign == "+" ? 1 : -1};
}

std::string point_text(const ImagePoint& p) {
  if (!p.is_new()) return p.vertex;
  return p.segment + "@" + (p.sign > 0 ? "+" : "-");
}

Trellis build_trellis(const Raw& raw, bool check) {
  Trellis tr;
  auto& e = tr.encoding;
  auto& m = tr.map;
  e.name = raw.name;
  auto section = [&](const std::string& n) -> const std::vector<Line>& {
    static const std::vector<Line> empty;
    auto it = raw.sections.find(n);
    return it == raw.sections.end() ? empty : it->second.items;
  };
  for (const auto& l : section("points")) {
    const auto& t = l.tokens;
    if (t.size() != 4) throw SyntaxError(l.number, t.back().column, "expected 'P PERIOD -> IMAGE'");
    int period = 0;
    try {
      period = std::stoi(t[1].text);
    } catch (...) {
      throw SyntaxError(l.number, t[1].column, "period must be an integer");
    }
    expect_arrow(l, 2);
    e.points.push_back({t[0].text, period, t[3].text});
  }
  for (const auto& l : section("branches")) {
    const auto& t = l.tokens;
    if (t.size() < 2) throw SyntaxError(l.number, t[0].column, "expected 'P SLOT: crossings'");
    std::string slot_text = t[1].text;
    std::size_t i = 2;
    if (!slot_text.empty() && slot_text.back() == ':')
      slot_text.pop_back();
    else if (i < t.size() && t[i].text == ":")
      ++i;
    else
      throw SyntaxError(l.number, t[1].column + static_cast<int>(t[1].text.size()), "expected ':'");
    auto slot = parse_branch_slot(slot_text);
    if (!slot) throw SyntaxError(l.number, t[1].column, "unknown branch slot '" + slot_text + "'");
    Branch b{t[0].text, *slot, {}, is_unstable(*slot)};
    for (; i < t.size(); ++i) {
      if (t[i].text == "open") {
        if (i + 1 != t.size()) throw SyntaxError(l.number, t[i].column, "'open' must come last");
        b.open_end = true;
        continue;
      }
      b.crossings.push_back(t[i].text);
    }
    e.branches.push_back(std::move(b));
  }
  for (const auto& l : section("signs")) {
    const auto& t = l.tokens;
    if (t.size() != 2 || (t[1].text != "+" && t[1].text != "-"))
      throw SyntaxError(l.number, t.size() > 1 ? t[1].column : t[0].column, "expected 'C +|-'");
    if (e.signs.count(t[0].text)) semantic_at(l, t[0], "second sign for '" + t[0].text + "'");
    e.signs[t[0].text] = t[1].text == "+" ? 1 : -1;
  }
  for (const auto& l : section("punctures")) {
    const auto& t = l.tokens;
    if (t.size() < 4) throw SyntaxError(l.number, t.back().column, "expected 'NAME SIDE -> IMAGE'");
    expect_arrow(l, 2);
    Puncture p{t[0].text, t[1].text, t[3].text, false, ""};
    std::size_t i = 4;
    if (i < t.size() && t[i].text == "at-infinity") {
      p.at_infinity = true;
      ++i;
    }
    if (i < t.size()) {
      if (t[i].text != "word") throw SyntaxError(l.number, t[i].column, "expected 'word'");
      for (++i; i < t.size(); ++i) p.image_word += (p.image_word.empty() ? "" : " ") + t[i].text;
      if (p.image_word.empty()) throw SyntaxError(l.number, t.back().column, "empty word");
    }
    e.punctures.push_back(std::move(p));
  }
  for (const auto& l : section("regions")) {
    const auto& t = l.tokens;
    if (t.size() != 2) throw SyntaxError(l.number, t.back().column, "expected 'LABEL SIDE'");
    if (e.region_labels.count(t[0].text)) semantic_at(l, t[0], "second region '" + t[0].text + "'");
    e.region_labels[t[0].text] = t[1].text;
  }
  for (const auto& l : section("stable-images")) {
    const auto& t = l.tokens;
    if (t.size() != 3) throw SyntaxError(l.number, t.back().column, "expected 'SEGMENT -> SEGMENT'");
    expect_arrow(l, 1);
    m.stable_segment_image[t[0].text] = t[2].text;
  }
  for (const auto& l : section("vertex-images")) {
    const auto& t = l.tokens;
    if (t.size() != 3) throw SyntaxError(l.number, t.back().column, "expected 'C -> POINT'");
    expect_arrow(l, 1);
    m.vertex_image[t[0].text] = parse_point(l, t[2]);
  }
  for (const auto& l : section("pieces")) {
    const auto& t = l.tokens;
    expect_arrow(l, 1);
    std::vector<ImagePoint> pts;
    for (std::size_t i = 2; i < t.size(); ++i)
      if (!is_trivial_token(t[i].text)) pts.push_back(parse_point(l, t[i]));
    m.piece_image[t[0].text] = std::move(pts);
  }
  auto r = check ? validate_trellis_map(tr) : validate_trellis(e);
  if (!r.ok()) throw SemanticError("invalid trellis", r);
  return tr;
}

const std::set<std::string> kGraphSections{"vertices", "edges", "order", "map"};
const std::set<std::string> kTrellisSections{"points",  "branches",      "signs",
                                             "punctures", "regions",     "stable-images",
                                             "vertex-images", "pieces"};

Document parse(const std::string& text, bool check) {
  Raw raw = split_sections(text, kGraphSections, kTrellisSections);
  Document d;
  d.kind = raw.kind;
  d.name = raw.name;
  d.comments = raw.comments;
  if (raw.kind == DocumentKind::GraphMap)
    d.map = build_graphmap(raw, check);
  else
    d.trellis = build_trellis(raw, check);
  return d;
}

std::string serialize_graphmap(const ControlledGraphMap& m) {
  const auto& g = m.graph;
  std::ostringstream os;
  os << "vertices:\n";
  for (VertexId v : g.vertices()) {
    os << "  " << g.vertex_name(v) << " -> " << g.vertex_name(m.vertex_image[v]);
    if (g.vertex_marked(v)) os << " marked";
    os << "\n";
  }
  os << "edges:\n";
  for (EdgeId e : g.edges()) {
    os << "  " << g.edge_name(e) << " " << to_string(g.kind(e)) << " "
       << g.vertex_name(g.origin(forward_dart(e))) << " "
       << g.vertex_name(g.origin(backward_dart(e)));
    if (g.is_control(e) && g.marked_point(e) != "w_" + g.edge_name(e))
      os << " " << g.marked_point(e);
    os << "\n";
  }
  os << "order:\n";
  for (VertexId v : g.vertices()) {
    os << "  " << g.vertex_name(v) << ":";
    for (Dart d : g.rotation(v)) os << " " << g.dart_name(d);
    os << "\n";
  }
  os << "map:\n";
  for (EdgeId e : g.edges())
    os << "  " << g.edge_name(e) << " -> " << path_to_string(g, m.edge_image[e]) << "\n";
  return os.str();
}

std::string serialize_trellis(const Trellis& tr) {
  const auto& e = tr.encoding;
  const auto& m = tr.map;
  std::ostringstream os;
  os << "points:\n";
  for (const auto& p : e.points) os << "  " << p.name << " " << p.period << " -> " << p.image << "\n";
  os << "branches:\n";
  for (const auto& b : e.branches) {
    os << "  " << b.point << " " << to_string(b.slot) << ":";
    for (const auto& c : b.crossings) os << " " << c;
    if (b.open_end && !is_unstable(b.slot)) os << " open";
    os << "\n";
  }
  if (!e.signs.empty()) {
    os << "signs:\n";
    for (const auto& [c, s] : e.signs) os << "  " << c << " " << (s > 0 ? "+" : "-") << "\n";
  }
  if (!e.punctures.empty()) {
    os << "punctures:\n";
    for (const auto& p : e.punctures) {
      os << "  " << p.name << " " << p.side << " -> " << p.image;
      if (p.at_infinity) os << " at-infinity";
      if (!p.image_word.empty()) os << " word " << p.image_word;
      os << "\n";
    }
  }
  if (!e.region_labels.empty()) {
    os << "regions:\n";
    for (const auto& [l, s] : e.region_labels) os << "  " << l << " " << s << "\n";
  }
  if (!m.stable_segment_image.empty()) {
    os << "stable-images:\n";
    for (const auto& [s, t] : m.stable_segment_image) os << "  " << s << " -> " << t << "\n";
  }
  if (!m.vertex_image.empty()) {
    os << "vertex-images:\n";
    for (const auto& [v, p] : m.vertex_image) os << "  " << v << " -> " << point_text(p) << "\n";
  }
  if (!m.piece_image.empty()) {
    os << "pieces:\n";
    for (const auto& [piece, pts] : m.piece_image) {
      os << "  " << piece << " ->";
      if (pts.empty()) os << " ·";
      for (const auto& p : pts) os << " " << point_text(p);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace

Document parse_document(const std::string& text) { return parse(text, true); }
Document parse_document_unchecked(const std::string& text) { return parse(text, false); }

std::string serialize(const Document& d) {
  std::ostringstream os;
  for (const auto& c : d.comments) os << "#" << (c.empty() ? "" : " " + c) << "\n";
  os << (d.kind == DocumentKind::GraphMap ? "graphmap " : "trellis ") << d.name << "\n";
  os << (d.kind == DocumentKind::GraphMap ? serialize_graphmap(d.map) : serialize_trellis(d.trellis));
  return os.str();
}

Document graphmap_document(std::string name, ControlledGraphMap m) {
  Document d;
  d.kind = DocumentKind::GraphMap;
  d.name = std::move(name);
  d.map = compact(m);
  return d;
}

Document trellis_document(Trellis t) {
  Document d;
  d.kind = DocumentKind::Trellis;
  d.name = t.encoding.name;
  d.trellis = std::move(t);
  return d;
}

nlohmann::json map_to_json(const ControlledGraphMap& m) {
  using nlohmann::json;
  const auto& g = m.graph;
  json vs = json::array(), es = json::array(), order = json::object();
  for (VertexId v : g.vertices()) {
    vs.push_back({{"name", g.vertex_name(v)},
                  {"image", g.vertex_name(m.vertex_image[v])},
                  {"marked", g.vertex_marked(v)}});
    json rot = json::array();
    for (Dart d : g.rotation(v)) rot.push_back(g.dart_name(d));
    order[g.vertex_name(v)] = rot;
  }
  for (EdgeId e : g.edges()) {
    json img = json::array();
    for (Dart d : m.edge_image[e].darts) img.push_back(g.dart_name(d));
    json je = {{"name", g.edge_name(e)},
               {"kind", to_string(g.kind(e))},
               {"from", g.vertex_name(g.origin(forward_dart(e)))},
               {"to", g.vertex_name(g.origin(backward_dart(e)))},
               {"image", img}};
    if (g.is_control(e)) je["marked_point"] = g.marked_point(e);
    es.push_back(je);
  }
  return {{"vertices", vs}, {"edges", es}, {"order", order}};
}

nlohmann::json document_to_json(const Document& d) {
  using nlohmann::json;
  json j = {{"format", 1},
            {"kind", d.kind == DocumentKind::GraphMap ? "graphmap" : "trellis"},
            {"name", d.name}};
  if (!d.comments.empty()) j["comments"] = d.comments;
  if (d.kind == DocumentKind::GraphMap) {
    j["map"] = map_to_json(d.map);
  } else {
    const auto& e = d.trellis.encoding;
    json pts = json::array(), brs = json::array(), pun = json::array();
    for (const auto& p : e.points)
      pts.push_back({{"name", p.name}, {"period", p.period}, {"image", p.image}});
    for (const auto& b : e.branches)
      brs.push_back({{"point", b.point},
                     {"slot", to_string(b.slot)},
                     {"crossings", b.crossings},
                     {"open_end", b.open_end}});
    for (const auto& p : e.punctures)
      pun.push_back({{"name", p.name},
                     {"side", p.side},
                     {"image", p.image},
                     {"at_infinity", p.at_infinity},
                     {"word", p.image_word}});
    json signs = json::object();
    for (const auto& [c, s] : e.signs) signs[c] = s;
    json vimg = json::object();
    for (const auto& [v, p] : d.trellis.map.vertex_image) vimg[v] = point_text(p);
    json pieces = json::object();
    for (const auto& [k, ps] : d.trellis.map.piece_image) {
      json a = json::array();
      for (const auto& p : ps) a.push_back(point_text(p));
      pieces[k] = a;
    }
    j["trellis"] = {{"points", pts},
                    {"branches", brs},
                    {"signs", signs},
                    {"punctures", pun},
                    {"regions", e.region_labels},
                    {"stable_images", d.trellis.map.stable_segment_image},
                    {"vertex_images", vimg},
                    {"pieces", pieces}};
  }
  return j;
}

std::string map_to_dot(const ControlledGraphMap& m, const std::string& name) {
  const auto& g = m.graph;
  auto quote = [](const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n";
  for (VertexId v : g.vertices()) {
    os << "  " << quote(g.vertex_name(v));
    if (g.vertex_marked(v)) os << " [style=filled]";
    os << ";\n";
  }
  for (EdgeId e : g.edges()) {
    os << "  " << quote(g.vertex_name(g.origin(forward_dart(e)))) << " -> "
       << quote(g.vertex_name(g.origin(backward_dart(e)))) << " [label="
       << quote(g.is_control(e) ? g.edge_name(e) + " (" + g.marked_point(e) + ")" : g.edge_name(e));
    if (g.is_control(e)) os << ", color=\"black:black\"";
    if (g.kind(e) == EdgeKind::Peripheral) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace graphrep
