#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "periodforge/graph.hpp"
#include "periodforge/polynomial.hpp"
#include "periodforge/rational.hpp"

namespace periodforge {

// Uniform on the open interval (0, 1).
double open_uniform(std::mt19937_64& rng);

// Sampler for the projective density prod x_e^(nu_e - 1) / Psi_tr(x)^s / H on
// the positive simplex, where Psi_tr is the maximum monomial of Psi and
// sum nu = s * h. H is computed exactly from the recursion over edge subsets
// J(g) = sum_{e in g} J(g \ e) / w(g \ e), w(g) = nu(g) - s h(g).
class TropicalSampler {
 public:
  explicit TropicalSampler(const Graph& g);  // nu = 1, s = |E| / h
  TropicalSampler(const Graph& g, std::vector<Rational> nu);

  int num_edges() const { return num_edges_; }
  const Rational& exponent() const { return s_; }
  const Rational& normalization() const { return normalization_; }

  struct Sample {
    std::vector<double> point;  // largest coordinate equals 1
    std::vector<long double> log_point;
  };
  Sample sample(std::mt19937_64& rng) const;

  // log of prod x^(nu - 1) / Psi_tr(x)^s at a point, with Psi_tr from `psi`.
  long double log_density_kernel(const MultilinearPoly& psi, const std::vector<long double>& log_point) const;

 private:
  int num_edges_ = 0;
  Rational s_;
  std::vector<Rational> nu_;
  std::vector<double> nu_double_;
  double s_double_ = 0;
  Rational normalization_;
  std::vector<double> j_;      // J per edge subset
  std::vector<double> omega_;  // w per edge subset
};

// log Psi(x) and log Psi_tr(x) from log coordinates, by log-sum-exp.
struct LogPsi {
  long double log_psi;
  long double log_psi_tropical;
};
LogPsi log_psi(const MultilinearPoly& psi, const std::vector<long double>& log_point);

}  // namespace periodforge
