#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "periodforge/exact_rank.hpp"
#include "periodforge/graph.hpp"
#include "periodforge/rational.hpp"

namespace periodforge {

// Orientation of a class is the edge order of its canonical representative.
struct OrientedClass {
  Graph representative;
  std::string key;
};

// Sparse rational combination of oriented classes.
class ChainVector {
 public:
  struct Term {
    Graph graph;
    Rational coefficient;
  };

  ChainVector() = default;
  // Adds coefficient * [g with its own edge order]; zero classes vanish.
  void add(const Graph& g, const Rational& coefficient);
  ChainVector& operator+=(const ChainVector& other);
  ChainVector scaled(const Rational& factor) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::string, Term>& terms() const { return terms_; }
  Rational coefficient(const Graph& g) const;  // relative to g's edge order

 private:
  std::map<std::string, Term> terms_;
};

ChainVector operator-(const ChainVector& a, const ChainVector& b);

// Valid generators: connected, no self-edges, every vertex of degree >= 3.
bool is_gc_graph(const Graph& g);
// Parallel edges or an automorphism inducing an odd edge permutation.
bool is_zero_class(const Graph& g);

struct Reduction {
  OrientedClass cls;
  int sign;
};
// Canonical class of g with the parity taking g's edge order to the
// representative's; nullopt for zero classes.
std::optional<Reduction> reduce_to_basis(const Graph& g);

// d[G, e_1 ^ ... ^ e_n] = sum_i (-1)^i [G // e_i, e_1 ^ ... omit e_i ... ^ e_n].
ChainVector differential(const ChainVector& c);

std::vector<OrientedClass> gc_basis(int loops, int edges);

// Matrix of d from bigrade (loops, edges) to (loops, edges - 1), columns
// indexed by gc_basis(loops, edges), rows by gc_basis(loops, edges - 1).
SparseMatrix differential_matrix(int loops, int edges);

struct BigradeReport {
  int edges = 0;
  int degree = 0;  // edges - 2 loops
  int dimension = 0;
  int rank_out = 0;  // rank of d leaving this bigrade
  int rank_in = 0;   // rank of d arriving from edges + 1
  int homology = 0;
  bool d_squared_zero = true;
};

struct HomologyReport {
  int loops = 0;
  std::vector<BigradeReport> bigrades;
  std::map<int, int> dims;  // degree -> dim H
  nlohmann::json to_json() const;
  std::string to_table() const;
};

// Loops up to 6 by default; 7 with allow_seven.
HomologyReport homology(int loops, bool allow_seven = false);
std::map<int, int> homology_dims(int loops);

}  // namespace periodforge
