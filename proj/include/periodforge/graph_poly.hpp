#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "periodforge/graph.hpp"
#include "periodforge/linear_form_matrix.hpp"
#include "periodforge/polynomial.hpp"

namespace periodforge {

// Kirchhoff polynomial: sum over spanning trees of the product of the edge
// variables outside the tree. Zero for disconnected graphs.
MultilinearPoly graph_polynomial(const Graph& g);
MultilinearPoly graph_polynomial_by_trees(const Graph& g);
MultilinearPoly graph_polynomial_by_recursion(const Graph& g);

// Returns (Psi of g minus e, Psi of g contracted along e); either may be zero.
std::pair<MultilinearPoly, MultilinearPoly> contraction_deletion_split(const Graph& g, int e);

// Rows are cycles in edge coordinates relative to each edge's stored orientation.
struct CycleBasis {
  IntMatrix cycles;  // h x |E|
  int size() const { return static_cast<int>(cycles.rows()); }
};

// Fundamental cycles of the greedy lowest-id spanning tree; the non-tree edge
// has coefficient +1 in its cycle.
CycleBasis cycle_basis(const Graph& g);
// Validates that rows lie in the cycle space and are independent.
CycleBasis make_cycle_basis(const Graph& g, const IntMatrix& rows);
bool is_integral_basis(const Graph& g, const CycleBasis& b);

LinearFormMatrix laplacian(const Graph& g, const CycleBasis& b);
LinearFormMatrix laplacian(const Graph& g);

// Strict nonempty edge subsets gamma with |gamma| <= 2 h(gamma), as bitmasks.
std::vector<std::uint64_t> divergent_subgraphs(const Graph& g);

}  // namespace periodforge
