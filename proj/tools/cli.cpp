#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "graphrep/analysis.hpp"
#include "graphrep/document.hpp"
#include "graphrep/fixtures.hpp"
#include "graphrep/moves.hpp"
#include "graphrep/optimize.hpp"
#include "graphrep/symbolic.hpp"
#include "graphrep/trellis.hpp"

namespace graphrep::cli {

namespace {

using nlohmann::json;

std::string fmt10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double round10(double x) { return std::stod(fmt10(x)); }

struct Input {
  Document doc;
  ControlledGraphMap map;  // graph map, or the initial map derived from a trellis
};

// A path to a document, or the name of a built-in example.
Input load(const std::string& source) {
  std::string text;
  if (std::filesystem::is_regular_file(source)) {
    std::ifstream f(source);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else if (auto ex = find_example(source)) {
    text = ex->text;
  } else {
    throw Error("cannot open '" + source + "'");
  }
  Input in;
  in.doc = parse_document(text);
  in.map = in.doc.kind == DocumentKind::GraphMap ? in.doc.map : derive_initial_map(in.doc.trellis);
  return in;
}

std::string algorithm_for(const ControlledGraphMap& m) {
  if (!control_edges(m.graph).empty()) return "main";
  if (!detect_peripheral_subgraph(m).edges.empty()) return "peripheral";
  return "puncture";
}

AlgorithmOutcome run_algorithm(const std::string& which, const ControlledGraphMap& m,
                               const AlgorithmLimits& limits) {
  if (which == "main") return run_main_algorithm(m, limits);
  if (which == "peripheral") return run_peripheral_algorithm(m, limits);
  return run_puncture_algorithm(m, limits);
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::vector<std::string> peripheral_names(const ControlledGraphMap& m) {
  std::vector<std::string> out;
  for (EdgeId e : m.graph.edges())
    if (m.graph.kind(e) == EdgeKind::Peripheral) out.push_back(m.graph.edge_name(e));
  return out;
}

json zeta_json(const ZetaSeries& z) { return z.coefficients; }

json finding_json(const ReductionFinding& f) {
  return {{"kind", to_string(f.kind)},
          {"edges", f.edges},
          {"euler", f.euler},
          {"components", f.components},
          {"h_has_control", f.h_has_control},
          {"complement_has_control", f.complement_has_control}};
}

void print_finding(std::ostream& out, const ReductionFinding& f) {
  out << "reduction: " << to_string(f.kind) << "\n";
  out << "H: " << join(f.edges) << "\n";
  out << "H euler: " << f.euler << "\n";
  out << "H has control: " << (f.h_has_control ? "yes" : "no") << "\n";
  out << "complement has control: " << (f.complement_has_control ? "yes" : "no") << "\n";
}

std::vector<EdgeId> edge_ids(const ControlledGraphMap& m, const std::vector<std::string>& names) {
  std::vector<EdgeId> out;
  for (const auto& n : names)
    if (auto e = m.graph.find_edge(n)) out.push_back(*e);
  return out;
}

std::string map_text(const std::string& name, const ControlledGraphMap& m) {
  return serialize(graphmap_document(name, m));
}

struct Common {
  std::string input;
  bool json = false;
  bool dot = false;
  double tol = 1e-12;
  int zeta_order = -1;
  int max_moves = 10000;
  std::uint64_t seed = 1;

  AlgorithmLimits limits() const {
    AlgorithmLimits l;
    l.max_moves = max_moves;
    l.zeta_order = zeta_order;
    return l;
  }
};

int cmd_optimize(const Common& c, bool trace, bool expect_optimal, std::ostream& out) {
  Input in = load(c.input);
  const std::string which = algorithm_for(in.map);
  AlgorithmOutcome r = run_algorithm(which, in.map, c.limits());
  const bool reduced = r.result == AlgorithmResult::Reduction;
  std::optional<SpectralResult> spectral;
  if (!reduced) spectral = growth_rate(transition_matrix(r.map), c.tol);

  if (c.json) {
    json j = {{"format", 1},
              {"name", in.doc.name},
              {"algorithm", which},
              {"result", to_string(r.result)},
              {"moves", r.moves},
              {"zeta", zeta_json(r.zeta)},
              {"peripheral", peripheral_names(r.map)},
              {"map", map_to_json(r.map)}};
    if (spectral) {
      j["growth"] = round10(spectral->growth);
      j["entropy"] = round10(spectral->entropy);
      j["spectral_method"] = to_string(spectral->method);
      j["exact"] = spectral->exact;
    }
    if (r.reduction) j["reduction"] = finding_json(*r.reduction);
    if (trace) {
      json t = json::array();
      for (const auto& e : r.trace)
        t.push_back({{"kind", e.move.kind},
                     {"operands", e.move.operands},
                     {"zeta", zeta_json(e.control_zeta)},
                     {"peripheral_edges", e.peripheral_edges},
                     {"peripheral_zeta", zeta_json(e.peripheral_zeta)}});
      j["trace"] = t;
    }
    out << j.dump(2) << "\n";
  } else if (c.dot) {
    out << map_to_dot(r.map, in.doc.name);
  } else {
    out << "name: " << in.doc.name << "\n";
    out << "algorithm: " << which << "\n";
    out << "result: " << to_string(r.result) << "\n";
    out << "moves: " << r.moves << "\n";
    if (trace) {
      out << "trace:\n";
      for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& e = r.trace[i];
        out << "  " << i << " " << e.move.kind;
        if (!e.move.operands.empty()) out << " " << join(e.move.operands);
        out << " | zeta " << e.control_zeta.to_string(3) << " | P " << e.peripheral_edges << "\n";
      }
    }
    out << "zeta: " << r.zeta.to_string(3) << "\n";
    out << "peripheral: " << join(peripheral_names(r.map)) << "\n";
    if (spectral) {
      out << "growth: " << fmt10(spectral->growth) << "\n";
      out << "entropy: " << fmt10(spectral->entropy) << "\n";
    }
    if (r.reduction) print_finding(out, *r.reduction);
    out << map_text(in.doc.name, r.map);
  }
  if (reduced && expect_optimal) return kExitReduction;
  return kExitOk;
}

int cmd_analyze(const Common& c, const std::string& scope_name, std::ostream& out) {
  Input in = load(c.input);
  MatrixScope scope = MatrixScope::All;
  if (scope_name == "essential") scope = MatrixScope::Essential;
  if (scope_name == "expanding") scope = MatrixScope::Expanding;
  TransitionMatrix tm = transition_matrix(in.map, scope);
  SpectralResult s = growth_rate(tm, c.tol);
  ControlledGraphMap ess = essential_representative(in.map);
  ControlledGraphMap top = topological_representative(in.map);
  SpectralResult ts = growth_rate(transition_matrix(top), c.tol);
  if (c.json) {
    json j = {{"format", 1},
              {"name", in.doc.name},
              {"matrix", {{"index", tm.index}, {"entries", tm.entries}}},
              {"growth", round10(s.growth)},
              {"entropy", round10(s.entropy)},
              {"spectral_method", to_string(s.method)},
              {"exact", s.exact},
              {"essential", map_to_json(ess)},
              {"topological", map_to_json(top)},
              {"topological_growth", round10(ts.growth)}};
    if (tm.size() <= 12) j["characteristic_polynomial"] = characteristic_polynomial(tm.entries);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (c.dot) {
    out << map_to_dot(top, in.doc.name);
    return kExitOk;
  }
  out << "name: " << in.doc.name << "\n";
  out << "matrix: " << join(tm.index) << "\n";
  for (std::size_t i = 0; i < tm.size(); ++i) {
    out << "  " << tm.index[i] << ":";
    for (auto x : tm.entries[i]) out << " " << x;
    out << "\n";
  }
  if (tm.size() <= 12) {
    out << "characteristic polynomial:";
    for (auto x : characteristic_polynomial(tm.entries)) out << " " << x;
    out << "\n";
  }
  out << "growth: " << fmt10(s.growth) << "\n";
  out << "entropy: " << fmt10(s.entropy) << "\n";
  out << "method: " << to_string(s.method) << (s.exact ? " (exact)" : "") << "\n";
  out << "essential representative:\n" << map_text(in.doc.name + "-essential", ess);
  out << "topological representative:\n" << map_text(in.doc.name + "-topological", top);
  return kExitOk;
}

int cmd_reduce(const Common& c, std::ostream& out) {
  Input in = load(c.input);
  const std::string which = algorithm_for(in.map);
  AlgorithmOutcome r = run_algorithm(which, in.map, c.limits());
  if (!r.reduction) {
    out << "result: " << to_string(r.result) << "\n";
    out << "reduction: none\n";
    return kExitOk;
  }
  const ReductionFinding& f = *r.reduction;
  std::vector<EdgeId> h = edge_ids(r.map, f.edges);
  json j = {{"format", 1}, {"name", in.doc.name}, {"reduction", finding_json(f)}};
  std::ostringstream text;
  print_finding(text, f);
  switch (f.kind) {
    case ReductionKind::SeparatingCurve: {
      SeparatingReduction s = reduce_separating(r.map, h);
      json comps = json::array();
      for (std::size_t i = 0; i < s.components.size(); ++i) {
        const std::string nm = in.doc.name + "-H" + std::to_string(i);
        comps.push_back(map_to_json(s.components[i]));
        text << map_text(nm, s.components[i]);
      }
      j["components"] = comps;
      j["outside"] = map_to_json(s.outside);
      text << map_text(in.doc.name + "-outside", s.outside);
      break;
    }
    case ReductionKind::NonSeparatingCurve: {
      NonSeparatingReduction s = reduce_nonseparating(r.map, h);
      json pairs = json::array();
      for (const auto& [plus, minus] : s.pairing) {
        pairs.push_back({{"plus", plus}, {"minus", minus}});
        text << "pair: " << join(plus) << " | " << join(minus) << "\n";
      }
      j["pairing"] = pairs;
      j["map"] = map_to_json(s.map);
      text << map_text(in.doc.name + "-cut", s.map);
      break;
    }
    case ReductionKind::AttractorRepellor: {
      ControlledGraphMap a = restrict_to_invariant(r.map, h);
      j["attractor"] = map_to_json(a);
      text << map_text(in.doc.name + "-attractor", a);
      break;
    }
    case ReductionKind::None:
      break;
  }
  if (c.json)
    out << j.dump(2) << "\n";
  else
    out << text.str();
  return kExitOk;
}

int cmd_itineraries(const Common& c, int n, const std::vector<std::string>& keep, bool words,
                    std::ostream& out) {
  Input in = load(c.input);
  if (in.doc.kind != DocumentKind::Trellis) throw Error("no region labeling");
  AlgorithmOutcome r = run_algorithm(algorithm_for(in.map), in.map, c.limits());
  ItineraryTable t = itineraries(r.map, trellis_region_labels(in.doc.trellis.encoding), n, keep);
  std::vector<std::size_t> per_length(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& w : t.words)
    if (w.size() <= static_cast<std::size_t>(n)) ++per_length[w.size()];
  if (c.json) {
    json j = {{"format", 1},
              {"name", in.doc.name},
              {"alphabet", t.alphabet},
              {"states", t.state_labels},
              {"transitions", t.transitions},
              {"words_per_length", per_length},
              {"closed_counts", t.closed_counts},
              {"truncated", t.words_truncated}};
    if (words) j["words"] = t.words;
    if (c.dot) j["dot"] = itinerary_dot(t);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (c.dot) {
    out << itinerary_dot(t);
    return kExitOk;
  }
  out << "alphabet: " << join(t.alphabet) << "\n";
  out << "states: " << join(t.state_labels) << "\n";
  out << "words per length:";
  for (std::size_t k = 1; k < per_length.size(); ++k) out << " " << per_length[k];
  out << "\nclosed counts:";
  for (std::size_t k = 1; k < t.closed_counts.size(); ++k) out << " " << t.closed_counts[k];
  out << "\n";
  if (t.words_truncated) out << "words truncated\n";
  if (words)
    for (const auto& w : t.words) out << "  " << join(w) << "\n";
  return kExitOk;
}

struct Checks {
  std::ostream& out;
  int failed = 0;
  void report(const std::string& name, bool ok, const std::string& detail = {}) {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << ": " << detail;
    out << "\n";
    if (!ok) ++failed;
  }
};

int euler(const ControlledGraphMap& m) { return m.graph.vertex_count() - m.graph.edge_count(); }

void check_map(Checks& ck, const ControlledGraphMap& m, const Common& c) {
  ValidationReport v = validate_map(m);
  ck.report("validation", v.ok(), v.ok() ? "" : v.to_string());
  if (!v.ok()) return;
  const int chi = euler(m);
  const std::size_t controls = control_edges(m.graph).size();
  MoveResult t = tidy(m);
  ck.report("tidy keeps euler characteristic and controls",
            t.ok() && euler(t.map) == chi && control_edges(t.map.graph).size() == controls);
  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    ControlledGraphMap r = random_representation(m, c.seed + static_cast<std::uint64_t>(i), 4);
    if (!validate_map(r).ok() || euler(r) != chi || control_edges(r.graph).size() != controls) ++bad;
  }
  ck.report("re-presentations valid", bad == 0, bad ? std::to_string(bad) + " of 20 failed" : "");
  try {
    AlgorithmOutcome r = run_algorithm(algorithm_for(m), m, c.limits());
    ck.report("algorithm terminates", true, to_string(r.result));
  } catch (const std::exception& e) {
    ck.report("algorithm terminates", false, e.what());
  }
}

int cmd_check(const Common& c, std::ostream& out) {
  std::string text;
  if (std::filesystem::is_regular_file(c.input)) {
    std::ifstream f(c.input);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else if (auto ex = find_example(c.input)) {
    text = ex->text;
  } else {
    throw Error("cannot open '" + c.input + "'");
  }
  Checks ck{out};
  Document d = parse_document(text);
  ck.report("parse", true, d.name);
  const std::string canon = serialize(d);
  ck.report("round trip", serialize(parse_document(canon)) == canon);
  if (d.kind == DocumentKind::GraphMap) {
    check_map(ck, d.map, c);
  } else {
    ValidationReport v = validate_trellis_map(d.trellis);
    ck.report("trellis validation", v.ok(), v.ok() ? "" : v.to_string());
    RegionDecomposition rd = compute_regions(d.trellis.encoding);
    ck.report("regions", !rd.regions.empty(), std::to_string(rd.regions.size()) + " faces");
    check_map(ck, derive_initial_map(d.trellis), c);
  }
  return ck.failed ? kExitError : kExitOk;
}

int cmd_examples(const std::string& name, const std::string& dir, std::ostream& out) {
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    for (const auto& e : builtin_examples()) {
      std::ofstream f(std::filesystem::path(dir) / (e.name + ".gm"));
      f << e.text;
      out << e.name << ".gm\n";
    }
    return kExitOk;
  }
  if (!name.empty()) {
    auto e = find_example(name);
    if (!e) throw Error("unknown example '" + name + "'");
    out << e->text;
    return kExitOk;
  }
  for (const auto& e : builtin_examples()) out << e.name << "  " << e.summary << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph representatives of trellis mapping classes"};
  app.name("graphrep");
  app.require_subcommand(1);

  Common c;
  auto add_common = [&c](CLI::App* s) {
    s->add_option("input", c.input, "Document path or built-in example name")->required();
    auto* j = s->add_flag("--json", c.json, "JSON output");
    auto* d = s->add_flag("--dot", c.dot, "Graphviz output");
    j->excludes(d);
    s->add_option("--tol", c.tol, "Spectral tolerance")->check(CLI::PositiveNumber);
    s->add_option("--zeta-order", c.zeta_order, "Zeta truncation order (default: edge count)");
    s->add_option("--max-moves", c.max_moves, "Move budget")->check(CLI::PositiveNumber);
    s->add_option("--seed", c.seed, "Seed for randomized checks");
  };

  bool trace = false, expect_optimal = false;
  auto* optimize = app.add_subcommand("optimize", "Compute an optimal or efficient representative");
  add_common(optimize);
  optimize->add_flag("--trace", trace, "Print the move trace");
  optimize->add_flag("--expect-optimal", expect_optimal, "Exit 2 when a reduction is found");

  std::string scope = "all";
  auto* analyze = app.add_subcommand("analyze", "Transition matrix, growth and representatives");
  add_common(analyze);
  analyze->add_option("--scope", scope, "Matrix scope")
      ->check(CLI::IsMember({"all", "essential", "expanding"}));

  auto* reduce = app.add_subcommand("reduce", "Find and apply a reduction");
  add_common(reduce);

  int n = 6;
  std::vector<std::string> keep;
  bool words = false;
  auto* itin = app.add_subcommand("itineraries", "Symbolic itineraries of a trellis");
  add_common(itin);
  itin->add_option("-n", n, "Maximal word length")->check(CLI::Range(1, 30));
  itin->add_option("--keep", keep, "Region labels to keep")->delimiter(',');
  itin->add_flag("--words", words, "List the words");

  auto* check = app.add_subcommand("check", "Validate a document and run invariant checks");
  add_common(check);

  std::string example, dir;
  auto* examples = app.add_subcommand("examples", "List, print or write built-in examples");
  examples->add_option("name", example, "Example to print");
  examples->add_option("--write", dir, "Write all examples into a directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (optimize->parsed()) return cmd_optimize(c, trace, expect_optimal, out);
    if (analyze->parsed()) return cmd_analyze(c, scope, out);
    if (reduce->parsed()) return cmd_reduce(c, out);
    if (itin->parsed()) return cmd_itineraries(c, n, keep, words, out);
    if (check->parsed()) return cmd_check(c, out);
    if (examples->parsed()) return cmd_examples(example, dir, out);
  } catch (const std::exception& e) {
    err << "graphrep: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace graphrep::cli
