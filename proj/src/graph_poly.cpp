#include "periodforge/graph_poly.hpp"

#include <bit>
#include <map>
#include <numeric>
#include <string>

#include "periodforge/canonical_labeling.hpp"
#include "periodforge/error.hpp"
#include "periodforge/exact_rank.hpp"

namespace periodforge {

namespace {

constexpr int kTreeEnumerationLimit = 12;
constexpr int kSubsetSearchLimit = 16;

int root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

bool is_spanning_tree(const Graph& g, std::uint64_t mask) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::uint64_t m = mask; m; m &= m - 1) {
    const Edge& e = g.edges()[std::countr_zero(m)];
    int a = root(parent, e.u), b = root(parent, e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

// Variable j of the smaller graph is variable j (j < e) or j + 1 of the original.
std::vector<int> skip_map(int count, int e) {
  std::vector<int> map(count);
  for (int j = 0; j < count; ++j) map[j] = j < e ? j : j + 1;
  return map;
}

class PsiRecursion {
 public:
  MultilinearPoly operator()(const Graph& g) {
    if (g.num_vertices() == 0 || !g.is_connected()) return {};
    if (g.num_edges() <= kTreeEnumerationLimit) return graph_polynomial_by_trees(g);
    CanonicalForm cf = canonical_form(g);
    std::string key = canonical_key(cf.representative);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(key, expand(cf.representative)).first;
    // Representative variable image[i] is variable i of g.
    std::vector<int> back(g.num_edges());
    for (int i = 0; i < g.num_edges(); ++i) back[cf.permutation.image[i]] = i;
    return it->second.rename(back);
  }

 private:
  MultilinearPoly expand(const Graph& rep) {
    const int e = 0;
    const int m = rep.num_edges();
    std::vector<int> map = skip_map(m - 1, e);
    MultilinearPoly result = (*this)(delete_edge(rep, e)).rename(map).times_variable(e);
    if (auto contracted = contract_edge(rep, e, ContractionMode::kPolynomial)) {
      result += (*this)(*contracted).rename(map);
    }
    return result;
  }

  std::map<std::string, MultilinearPoly> memo_;
};

}  // namespace

MultilinearPoly graph_polynomial_by_trees(const Graph& g) {
  const int m = g.num_edges();
  if (m > 63) throw ValidationError("too many edges for spanning-tree enumeration");
  if (g.num_vertices() == 0 || !g.is_connected()) return {};
  const int k = g.num_vertices() - 1;
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::map<std::uint64_t, std::int64_t> terms;
  if (k == 0) {
    terms[all] = 1;
    return MultilinearPoly::from_terms(std::move(terms));
  }
  // Gosper's hack over k-subsets.
  for (std::uint64_t s = (std::uint64_t{1} << k) - 1; s <= all && s != 0;) {
    if (is_spanning_tree(g, s)) terms[all & ~s] = 1;
    std::uint64_t c = s & -s;
    std::uint64_t r = s + c;
    if (r == 0 || r > all) break;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return MultilinearPoly::from_terms(std::move(terms));
}

MultilinearPoly graph_polynomial_by_recursion(const Graph& g) {
  if (g.num_edges() > kMaxVariables) throw ValidationError("graph polynomial supports at most 16 edges");
  PsiRecursion psi;
  return psi(g);
}

MultilinearPoly graph_polynomial(const Graph& g) {
  if (g.num_edges() <= kTreeEnumerationLimit) return graph_polynomial_by_trees(g);
  return graph_polynomial_by_recursion(g);
}

std::pair<MultilinearPoly, MultilinearPoly> contraction_deletion_split(const Graph& g, int e) {
  std::vector<int> map = skip_map(g.num_edges() - 1, e);
  Graph deleted = delete_edge(g, e);
  MultilinearPoly first = graph_polynomial(deleted).rename(map);
  MultilinearPoly second;
  if (auto contracted = contract_edge(g, e, ContractionMode::kPolynomial)) {
    second = graph_polynomial(*contracted).rename(map);
  }
  return {first, second};
}

CycleBasis cycle_basis(const Graph& g) {
  if (!g.is_connected()) throw ValidationError("cycle basis needs a connected graph");
  const int n = g.num_vertices();
  const int m = g.num_edges();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> in_tree(m, 0);
  // Tree adjacency: (neighbor, edge, +1 if traversal follows orientation).
  std::vector<std::vector<std::tuple<int, int, int>>> adj(n);
  for (int i = 0; i < m; ++i) {
    const Edge& e = g.edges()[i];
    int a = root(parent, e.u), b = root(parent, e.v);
    if (a == b) continue;
    parent[a] = b;
    in_tree[i] = 1;
    adj[e.u].emplace_back(e.v, i, 1);
    adj[e.v].emplace_back(e.u, i, -1);
  }
  CycleBasis basis;
  basis.cycles = IntMatrix::Zero(loop_number(g), m);
  int row = 0;
  for (int f = 0; f < m; ++f) {
    if (in_tree[f]) continue;
    basis.cycles(row, f) = 1;
    // Walk the tree path from the head of f back to its tail.
    const int from = g.edges()[f].v, to = g.edges()[f].u;
    std::vector<int> via_edge(n, -1), via_sign(n, 0), prev(n, -1);
    std::vector<int> stack{from};
    std::vector<char> seen(n, 0);
    seen[from] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [y, edge, sign] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        prev[y] = x;
        via_edge[y] = edge;
        via_sign[y] = sign;
        stack.push_back(y);
      }
    }
    for (int x = to; x != from; x = prev[x]) basis.cycles(row, via_edge[x]) += via_sign[x];
    ++row;
  }
  return basis;
}

CycleBasis make_cycle_basis(const Graph& g, const IntMatrix& rows) {
  if (rows.cols() != g.num_edges()) throw ValidationError("cycle basis: column count must equal |E|");
  if (rows.rows() != loop_number(g)) throw ValidationError("cycle basis: row count must equal the loop number");
  for (int r = 0; r < rows.rows(); ++r) {
    std::vector<long long> boundary(g.num_vertices(), 0);
    for (int e = 0; e < g.num_edges(); ++e) {
      boundary[g.edges()[e].v] += rows(r, e);
      boundary[g.edges()[e].u] -= rows(r, e);
    }
    for (long long b : boundary) {
      if (b != 0) throw ValidationError("cycle basis: row " + std::to_string(r + 1) + " is not a cycle");
    }
  }
  RationalMatrix q = rows.cast<Rational>();
  if (exact_rank(q) != rows.rows()) throw ValidationError("cycle basis: rows are dependent");
  return CycleBasis{rows};
}

bool is_integral_basis(const Graph& g, const CycleBasis& b) {
  // Coordinates in the fundamental basis are the coefficients on the chords.
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> chords;
  for (int e = 0; e < g.num_edges(); ++e) {
    int x = root(parent, g.edges()[e].u), y = root(parent, g.edges()[e].v);
    if (x == y) {
      chords.push_back(e);
    } else {
      parent[x] = y;
    }
  }
  const int h = b.size();
  if (static_cast<int>(chords.size()) != h) return false;
  std::vector<Polynomial> entries;
  for (int r = 0; r < h; ++r) {
    for (int c : chords) entries.emplace_back(b.cycles(r, c));
  }
  Polynomial det = det_poly(entries, h);
  return det == Polynomial(1) || det == Polynomial(-1);
}

LinearFormMatrix laplacian(const Graph& g, const CycleBasis& b) {
  if (b.cycles.cols() != g.num_edges()) throw ValidationError("laplacian: basis dimension mismatch");
  LinearFormMatrix lap(b.size(), g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    IntVector c = b.cycles.col(e);
    lap.coefficient(e) = c * c.transpose();
  }
  return lap;
}

LinearFormMatrix laplacian(const Graph& g) { return laplacian(g, cycle_basis(g)); }

std::vector<std::uint64_t> divergent_subgraphs(const Graph& g) {
  const int m = g.num_edges();
  if (m > kSubsetSearchLimit) throw ValidationError("subdivergence search supports at most 16 edges");
  std::vector<std::uint64_t> out;
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t s = 1; s < all; ++s) {
    int size = std::popcount(s);
    if (size <= 2 * subgraph_loop_number(g, s)) out.push_back(s);
  }
  return out;
}

}  // namespace periodforge
