#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "periodforge/linear_form_matrix.hpp"
#include "periodforge/polynomial.hpp"

namespace periodforge {

// Wedge monomials are bitmasks over variable ids (dx_i for bit i), read in
// ascending order.
using WedgeMask = std::uint32_t;

// Sign of dx_a ^ dx_b relative to the sorted wedge of a | b; 0 if they overlap.
int wedge_sign(WedgeMask a, WedgeMask b);

// Numerator / base^power, where base is det(X) for the matrix the form came from.
class RationalForm {
 public:
  RationalForm() = default;
  RationalForm(int num_variables, int degree, Polynomial base, int power, std::map<WedgeMask, Polynomial> numerator);

  int num_variables() const { return num_variables_; }
  int degree() const { return degree_; }
  const Polynomial& base() const { return base_; }
  int power() const { return power_; }
  const std::map<WedgeMask, Polynomial>& numerator() const { return numerator_; }
  bool is_zero() const { return numerator_.empty(); }

  // Divides numerator and denominator by the base while possible.
  void reduce();
  // d(N / D^k) = (D dN - k dD ^ N) / D^(k+1), returned unreduced.
  RationalForm exterior_derivative() const;
  RationalForm scaled(std::int64_t factor) const;

  friend bool operator==(const RationalForm&, const RationalForm&) = default;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  int num_variables_ = 0;
  int degree_ = 0;
  Polynomial base_ = Polynomial(1);
  int power_ = 0;
  std::map<WedgeMask, Polynomial> numerator_;
};

// tr((X^-1 dX)^n), computed as tr((adj(X) dX)^n) / det(X)^n and reduced.
RationalForm canonical_form_symbolic(const LinearFormMatrix& x, int n);

// Both forms must share the base polynomial (same matrix).
RationalForm wedge(const RationalForm& a, const RationalForm& b);

// sum_i (-1)^i x_i dx_1 ^ ... omit i ... ^ dx_N with 1-based i.
std::map<WedgeMask, Polynomial> projective_volume_numerator(int num_variables);

}  // namespace periodforge
