#pragma once

#include <iosfwd>
#include <string>

#include "trichain/degree_sequence.hpp"
#include "trichain/graph.hpp"

namespace trichain {

// Text format: a one-line JSON header {"n":..,"degrees":[..],"t":..}
// followed by one "u v" edge per line, 0-based labels.
void save_graph(const Graph& g, std::ostream& os);
Graph load_graph(std::istream& is);

// "3x100" shorthand for regular sequences, otherwise comma-separated
// integers; "@path" reads the same syntax from a file.
DegreeSequence parse_degrees(const std::string& spec);

}  // namespace trichain
