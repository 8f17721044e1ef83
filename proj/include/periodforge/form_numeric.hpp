#pragma once

#include <span>
#include <string>
#include <vector>

#include "periodforge/graph.hpp"
#include "periodforge/graph_poly.hpp"
#include "periodforge/linear_form_matrix.hpp"

namespace periodforge {

// omega^{n_1} ^ omega^{n_2} ^ ... with n_i = 1 mod 4, n_i >= 5, strictly increasing.
class FormSpec {
 public:
  FormSpec() = default;
  explicit FormSpec(std::vector<int> degrees);
  static FormSpec parse(const std::string& text);  // "5" or "5,9"

  const std::vector<int>& degrees() const { return degrees_; }
  int degree() const;
  std::string to_string() const;
  friend bool operator==(const FormSpec&, const FormSpec&) = default;

 private:
  std::vector<int> degrees_;
};

// Coefficient of the (N-1)-form dx_1 ^ ... (omit `omitted`) ... ^ dx_N of
// omega^{n_1} ^ ... at `point`, for any positive odd or even degrees summing
// to N - 1. General matrices go through X^-1 A_j.
double top_coefficient(const LinearFormMatrix& x, std::span<const int> degrees, std::span<const double> point,
                       int omitted);

// The same for a graph Laplacian, using the rank-one structure of dLambda and
// an orthogonal projector so that points near the simplex boundary stay stable.
class LaplacianForms {
 public:
  LaplacianForms(const Graph& g, const CycleBasis& basis);
  explicit LaplacianForms(const Graph& g);

  int num_variables() const { return static_cast<int>(chords_.rows()); }
  long double top_coefficient(std::span<const int> degrees, std::span<const double> point, int omitted) const;
  // f with omega = f * Omega_G; evaluated through the largest coordinate.
  long double density(std::span<const int> degrees, std::span<const double> point) const;

 private:
  Matrix<double> projector(std::span<const double> point) const;
  Matrix<double> chords_;  // |E| x h, row e is the cycle-coordinate vector of edge e
};

// Coefficient against dx_1 ... dx_{N-1} in the chart x_N = 1.
double canonical_form_numeric(const LinearFormMatrix& x, const FormSpec& spec, std::span<const double> point);

// omega / Omega_G as a function on the positive orthant.
double canonical_density(const LinearFormMatrix& x, std::span<const int> degrees, std::span<const double> point);

}  // namespace periodforge
