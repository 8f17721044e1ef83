#pragma once

#include <string_view>

#include "periodforge/graph.hpp"

namespace periodforge {

enum class Family { kWheel, kZigzag, kCycle, kBanana, kComplete, kCompleteBipartite };

// Deterministic labeled instances; see builders.cpp for vertex and edge numbering.
Graph builtin_graph(Family family, int n, int m = 0);

Graph wheel(int spokes);
Graph zigzag(int loops);
Graph cycle(int n);
Graph banana(int edges);
Graph complete(int n);
Graph complete_bipartite(int a, int b);

Graph bubble();
Graph sunrise();
Graph dunce();
Graph dumbbell();

// Parses names such as "wheel:3", "zigzag:5", "complete_bipartite:3,4", "sunrise".
Graph named_graph(std::string_view spec);
bool is_named_graph(std::string_view spec);

}  // namespace periodforge
