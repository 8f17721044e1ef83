#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace periodforge {

inline constexpr int kMaxVariables = 16;

class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(int index, int power = 1);
  static Monomial from_mask(std::uint64_t mask);

  int exponent(int index) const { return exps_[index]; }
  int degree() const;
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial& other) const;
  bool is_multilinear() const;
  std::uint64_t mask() const;

  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;  // requires divides

  // Graded lexicographic with x_0 > x_1 > ...
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<std::uint8_t, kMaxVariables> exps_{};
};

// Sparse integer polynomial in x_0..x_15 with overflow-checked int64 coefficients.
class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    std::int64_t coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Polynomial() = default;
  Polynomial(std::int64_t constant);  // NOLINT: integers embed as constants
  static Polynomial variable(int index);
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int degree() const;
  bool is_homogeneous() const;
  std::int64_t coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial derivative(int index) const;
  Polynomial power(int n) const;
  Polynomial substitute_zero(int index) const;

  template <typename Scalar>
  Scalar evaluate(std::span<const Scalar> point) const {
    Scalar total(0);
    for (const Term& t : terms_) {
      Scalar value = static_cast<Scalar>(t.coefficient);
      for (int i = 0; i < kMaxVariables; ++i) {
        for (int k = 0; k < t.monomial.exponent(i); ++k) value *= point[i];
      }
      total += value;
    }
    return total;
  }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Term> terms_;  // sorted ascending by monomial, nonzero coefficients
};

// Exact quotient; throws if `divisor` does not divide `dividend`.
Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor);
// Quotient and remainder by leading-term division in the graded order.
std::pair<Polynomial, Polynomial> divide_with_remainder(const Polynomial& dividend, const Polynomial& divisor);

// Integer polynomial in which every variable has exponent <= 1, keyed by the
// variable set. Variables are edge indices.
class MultilinearPoly {
 public:
  MultilinearPoly() = default;
  static MultilinearPoly one();
  static MultilinearPoly from_terms(std::map<std::uint64_t, std::int64_t> terms);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<std::uint64_t, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(std::uint64_t mask) const;
  bool is_homogeneous_of_degree(int d) const;

  MultilinearPoly& operator+=(const MultilinearPoly& other);
  friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) { return a += b; }
  MultilinearPoly times_variable(int index) const;
  MultilinearPoly substitute_zero(int index) const;
  // Variable i becomes variable map[i].
  MultilinearPoly rename(std::span<const int> map) const;
  friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

  double evaluate(std::span<const double> point) const;
  Polynomial to_polynomial() const;
  static MultilinearPoly from_polynomial(const Polynomial& p);

  // Monomials ordered lexicographically by their ascending variable lists,
  // 1-based names: "x1*x2 + x1*x3 + x2*x3".
  std::string to_string() const;
  // [[coefficient, [ids...]], ...] with 1-based ids, same order as to_string.
  nlohmann::json to_json() const;

  // Variable sets in the to_string order.
  std::vector<std::pair<std::uint64_t, std::int64_t>> ordered_terms() const;

 private:
  std::map<std::uint64_t, std::int64_t> terms_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace periodforge
