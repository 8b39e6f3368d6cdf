#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphrep/graph_map.hpp"

namespace graphrep {

// A built-in example as document text (graph map or trellis).
struct Example {
  std::string name;
  std::string summary;
  std::string text;
};

const std::vector<Example>& builtin_examples();
std::optional<Example> find_example(const std::string& name);

ControlledGraphMap henon_example();
ControlledGraphMap algorithm2_example();
ControlledGraphMap ar_reduction_example();
ControlledGraphMap punctured_disc_example();
ControlledGraphMap rose_example();
ControlledGraphMap finite_order_example();

}  // namespace graphrep
