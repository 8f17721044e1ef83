#pragma once

#include <vector>

#include "periodforge/graph.hpp"

namespace periodforge {

// Connected 3-regular multigraphs of the given loop number (>= 2), up to
// isomorphism, as canonical representatives sorted by canonical key.
std::vector<Graph> enumerate_cubic(int loops, bool allow_self_edges);

// Stable weighted graphs of the given genus, up to weight-preserving isomorphism.
std::vector<Graph> enumerate_stable_weighted(int genus);

// Connected multigraphs without self-edges, minimum degree 3, given loop number
// and edge count. With simple_only, graphs with parallel edges are omitted.
std::vector<Graph> enumerate_gc_graphs(int loops, int edges, bool simple_only = false);

}  // namespace periodforge
