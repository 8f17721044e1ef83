#pragma once

#include <iosfwd>
#include <string>

#include "periodforge/graph.hpp"

namespace periodforge {

// Line format: "v <id> [weight]" and "e <id> <u> <v>", '#' starts a comment.
// Vertex ids are arbitrary integers mapped to dense indices in declaration
// order; edge ids must be 1..|E| in file order.
Graph parse_graph(std::istream& in);
Graph parse_graph_text(const std::string& text);
Graph read_graph_file(const std::string& path);

// Builtin name ("wheel:3") or a file path.
Graph load_graph(const std::string& spec);

std::string format_graph(const Graph& g);

}  // namespace periodforge
