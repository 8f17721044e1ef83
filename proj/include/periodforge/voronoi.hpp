#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "periodforge/graph.hpp"
#include "periodforge/graph_poly.hpp"
#include "periodforge/rational.hpp"

namespace periodforge {

using LatticeVector = std::vector<long long>;

class QuadraticForm {
 public:
  explicit QuadraticForm(RationalMatrix matrix);  // must be symmetric

  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const RationalMatrix& matrix() const { return matrix_; }
  Rational value(const LatticeVector& x) const;
  bool is_positive_definite() const;
  // P^T Q P
  QuadraticForm transformed(const IntMatrix& p) const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b);

 private:
  RationalMatrix matrix_;
};

// "g" followed by g*g rational entries, row-major.
QuadraticForm parse_quadratic_form(std::istream& in);
QuadraticForm read_quadratic_form_file(const std::string& path);
std::string format_matrix(const RationalMatrix& m);

// Exact LDL^T; nullopt unless positive definite. L is unit lower triangular.
struct LdlFactorization {
  RationalMatrix l;
  RationalVector d;
};
std::optional<LdlFactorization> ldl(const RationalMatrix& m);

// All vectors attaining the minimum of q on Z^g \ {0}, both signs, sorted.
std::vector<LatticeVector> minimal_vectors(const QuadraticForm& q);
// Every nonzero x with q(x) <= bound.
std::vector<LatticeVector> short_vectors(const QuadraticForm& q, const Rational& bound);

// First nonzero coordinate positive.
LatticeVector sign_normalized(LatticeVector x);

struct VoronoiCell {
  std::vector<LatticeVector> vectors;  // sign-normalized, sorted descending
  std::vector<IntMatrix> generators;  // xi xi^T in the same order
};
VoronoiCell voronoi_cell(const QuadraticForm& q);

// Laplacian evaluated at positive rational lengths.
QuadraticForm torelli_point(const Graph& g, const CycleBasis& basis, const std::vector<Rational>& lengths);
QuadraticForm torelli_point(const Graph& g, const std::vector<Rational>& lengths);

struct ConeMembership {
  bool member = false;
  std::vector<Rational> lambda;  // x = sum lambda_i G_i when member
  // When not a member: z on upper-triangular entries (i <= j, row-major) with
  // <z, G_i> >= 0 for all generators and <z, x> < 0.
  std::vector<Rational> separator;
};
ConeMembership cone_membership(const QuadraticForm& x, const VoronoiCell& cell);

// Exact feasibility of A lambda = b, lambda >= 0 (phase-one simplex, Bland's rule).
struct LinearFeasibility {
  bool feasible = false;
  std::vector<Rational> solution;
  std::vector<Rational> farkas;  // y with y^T A >= 0 and y^T b < 0 when infeasible
};
LinearFeasibility solve_feasibility(const RationalMatrix& a, const RationalVector& b);

}  // namespace periodforge
