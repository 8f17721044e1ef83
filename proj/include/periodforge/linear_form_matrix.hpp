#pragma once

#include <span>
#include <string>
#include <vector>

#include "periodforge/polynomial.hpp"
#include "periodforge/rational.hpp"

namespace periodforge {

// Square matrix X = A_0 + sum_j x_j A_j with integer A's.
class LinearFormMatrix {
 public:
  LinearFormMatrix(int size, int num_variables);

  int size() const { return size_; }
  int num_variables() const { return static_cast<int>(coefficients_.size()); }
  const IntMatrix& constant() const { return constant_; }
  IntMatrix& constant() { return constant_; }
  const IntMatrix& coefficient(int var) const { return coefficients_.at(var); }
  IntMatrix& coefficient(int var) { return coefficients_.at(var); }

  bool is_symmetric() const;
  Polynomial entry(int i, int j) const;

  // X^T and P^T X P.
  LinearFormMatrix transpose() const;
  LinearFormMatrix congruence(const IntMatrix& p) const;

  template <typename Scalar>
  Matrix<Scalar> evaluate(std::span<const Scalar> point) const {
    Matrix<Scalar> out = constant_.template cast<Scalar>();
    for (int j = 0; j < num_variables(); ++j) {
      out += coefficients_[j].template cast<Scalar>() * point[j];
    }
    return out;
  }

  std::string to_string() const;

  // Generic m x m matrix: x_1..x_m on the diagonal, then the strict upper
  // triangle row by row, then the strict lower triangle row by row.
  static LinearFormMatrix generic(int m);
  // Generic symmetric m x m: diagonal first, then the upper triangle row by row.
  static LinearFormMatrix generic_symmetric(int m);

 private:
  int size_;
  IntMatrix constant_;
  std::vector<IntMatrix> coefficients_;
};

// Fraction-free (Bareiss) determinant of a square matrix of polynomials,
// row-major entries.
Polynomial det_poly(const std::vector<Polynomial>& entries, int size);
Polynomial det_poly(const LinearFormMatrix& m);

// Adjugate of a square polynomial matrix, row-major.
std::vector<Polynomial> adjugate(const std::vector<Polynomial>& entries, int size);

}  // namespace periodforge
