#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "periodforge/graph.hpp"

namespace periodforge {

// image[i] is the position that edge i moves to.
struct EdgePermutation {
  std::vector<int> image;
  int parity = 1;
  friend bool operator==(const EdgePermutation&, const EdgePermutation&) = default;
};

int permutation_parity(std::span<const int> perm);
EdgePermutation make_edge_permutation(std::vector<int> image);

struct CanonicalForm {
  Graph representative;
  EdgePermutation permutation;  // from the input's edge order to the representative's
  std::vector<int> vertex_labels;  // input vertex -> representative vertex
};

// Representative vertices are numbered by the canonical labeling; edges are
// stored as (smaller, larger) label pairs sorted lexicographically, with ties
// broken by input edge order. Vertex weights participate.
CanonicalForm canonical_form(const Graph& g);

// Stable text key of a representative; equal keys iff isomorphic graphs.
std::string canonical_key(const Graph& representative);
std::string canonical_key_of(const Graph& g);

bool is_isomorphic(const Graph& a, const Graph& b);

// All weight-preserving vertex automorphisms (as vertex maps).
std::vector<std::vector<int>> vertex_automorphisms(const Graph& g);

struct EdgeAutomorphismGroup {
  std::vector<EdgePermutation> generators;
  std::uint64_t order = 1;
  bool has_odd = false;
};

// Edge permutations induced by multigraph automorphisms, including arbitrary
// permutations inside bundles of parallel edges or repeated self-edges.
EdgeAutomorphismGroup automorphism_edge_group(const Graph& g);

}  // namespace periodforge
