#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphrep/graph_map.hpp"
#include "graphrep/trellis.hpp"

namespace graphrep {

enum class DocumentKind { GraphMap, Trellis };

struct Document {
  DocumentKind kind = DocumentKind::GraphMap;
  std::string name;
  std::vector<std::string> comments;  // leading "#" lines without the marker
  ControlledGraphMap map;             // kind == GraphMap
  Trellis trellis;                    // kind == Trellis
};

// Syntax error at a 1-based line and column.
struct SyntaxError : Error {
  SyntaxError(int line, int column, const std::string& what);
  int line;
  int column;
};

// Well-formed text whose content fails validation.
struct SemanticError : Error {
  SemanticError(const std::string& what, ValidationReport report = {});
  ValidationReport report;
};

// Graph-map text:
//   graphmap NAME
//   vertices:   V [-> IMAGE] [marked]
//   edges:      NAME free|control|peripheral FROM TO [MARKED-POINT]
//   order:      V: d1 ~d2 ...
//   map:        EDGE -> WORD        ("·" for a trivial image)
// Trellis text:
//   trellis NAME
//   points:        P PERIOD -> IMAGE
//   branches:      P SLOT: c1 c2 ... [open]
//   signs:         C +|-
//   punctures:     NAME SIDE -> IMAGE [at-infinity] [word W...]
//   regions:       LABEL SIDE
//   stable-images: SEGMENT -> SEGMENT
//   vertex-images: C -> C' | SEGMENT@+|-
//   pieces:        PIECE -> point...
// Lines starting with "#" before the header are comments.
Document parse_document(const std::string& text);
// Parse without running map validation (structure is still checked).
Document parse_document_unchecked(const std::string& text);
std::string serialize(const Document& d);

Document graphmap_document(std::string name, ControlledGraphMap m);
Document trellis_document(Trellis t);

nlohmann::json map_to_json(const ControlledGraphMap& m);
nlohmann::json document_to_json(const Document& d);
// DOT export: control edges double-lined and labelled by their marked point,
// marked vertices filled, peripheral edges dashed.
std::string map_to_dot(const ControlledGraphMap& m, const std::string& name = "G");

}  // namespace graphrep
