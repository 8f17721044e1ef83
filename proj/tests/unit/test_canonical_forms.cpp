#include <bit>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "periodforge/builders.hpp"
#include "periodforge/error.hpp"
#include "periodforge/form_numeric.hpp"
#include "periodforge/forms.hpp"
#include "periodforge/graph_poly.hpp"

using namespace periodforge;

namespace {

std::map<WedgeMask, Polynomial> scaled_volume(int n, std::int64_t factor) {
  auto vol = projective_volume_numerator(n);
  for (auto& [mask, p] : vol) p = p * Polynomial(factor);
  return vol;
}

std::vector<double> positive_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

// A point where a general (not necessarily positive) matrix is comfortably invertible.
std::vector<double> generic_point(std::mt19937_64& rng, const LinearFormMatrix& x) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    std::vector<double> p(x.num_variables());
    for (auto& v : p) v = u(rng);
    if (std::abs(x.evaluate<double>(std::span<const double>(p)).determinant()) > 0.3) return p;
  }
}

double evaluate_coefficient(const RationalForm& f, WedgeMask mask, std::span<const double> point) {
  auto it = f.numerator().find(mask);
  if (it == f.numerator().end()) return 0.0;
  return it->second.evaluate(point) / std::pow(f.base().evaluate(point), f.power());
}

oracle::SmallMatrix<double> to_small(const Matrix<double>& m) {
  oracle::SmallMatrix<double> out(m.rows(), std::vector<double>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

std::vector<oracle::SmallMatrix<double>> log_derivatives(const LinearFormMatrix& x, std::span<const double> point) {
  Matrix<double> inv = x.evaluate<double>(point).inverse();
  std::vector<oracle::SmallMatrix<double>> out;
  for (int j = 0; j < x.num_variables(); ++j) out.push_back(to_small(inv * x.coefficient(j).cast<double>()));
  return out;
}

int inversions(WedgeMask first, WedgeMask second) {
  int count = 0;
  for (WedgeMask b = first; b; b &= b - 1) count += std::popcount(second & ((WedgeMask{1} << std::countr_zero(b)) - 1));
  return count;
}

IntMatrix random_unimodular(std::mt19937_64& rng, int n) {
  IntMatrix p = IntMatrix::Identity(n, n);
  for (int step = 0; step < 3 * n; ++step) {
    int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (i == j) continue;
    p.col(i) += (static_cast<long long>(rng() % 3) - 1) * p.col(j);
  }
  return p;
}

WedgeMask all_but(int n, int omitted) { return ((WedgeMask{1} << n) - 1) & ~(WedgeMask{1} << omitted); }

}  // namespace

TEST(Symbolic, GenericTwoByTwoOmega3) {
  LinearFormMatrix x = LinearFormMatrix::generic(2);
  RationalForm f = canonical_form_symbolic(x, 3);
  RationalForm expected(4, 3, det_poly(x), 2, scaled_volume(4, 3));
  EXPECT_EQ(f, expected) << f.to_string();
}

TEST(Symbolic, SymmetricThreeByThreeOmega5) {
  LinearFormMatrix x = LinearFormMatrix::generic_symmetric(3);
  RationalForm f = canonical_form_symbolic(x, 5);
  RationalForm expected(6, 5, det_poly(x), 2, scaled_volume(6, -10));
  EXPECT_EQ(f, expected) << f.to_string();
}

TEST(Symbolic, WheelThreeOmega5IsTenVolumeOverPsiSquared) {
  Graph g = wheel(3);
  RationalForm f = canonical_form_symbolic(laplacian(g), 5);
  EXPECT_EQ(f.base(), graph_polynomial(g).to_polynomial());
  EXPECT_EQ(f.power(), 2);
  EXPECT_EQ(f.numerator(), scaled_volume(6, 10));
}

TEST(Symbolic, EvenDegreesVanish) {
  for (int n : {2, 4}) {
    EXPECT_TRUE(canonical_form_symbolic(LinearFormMatrix::generic(2), n).is_zero()) << n;
    EXPECT_TRUE(canonical_form_symbolic(LinearFormMatrix::generic_symmetric(3), n).is_zero()) << n;
  }
  EXPECT_TRUE(canonical_form_symbolic(LinearFormMatrix::generic_symmetric(3), 6).is_zero());
}

TEST(Symbolic, SymmetricOmega3Vanishes) {
  EXPECT_TRUE(canonical_form_symbolic(LinearFormMatrix::generic_symmetric(3), 3).is_zero());
  EXPECT_TRUE(canonical_form_symbolic(LinearFormMatrix::generic_symmetric(4), 3).is_zero());
}

TEST(Symbolic, SymmetricOmega7VanishesOnFourByFour) {
  EXPECT_TRUE(canonical_form_symbolic(LinearFormMatrix::generic_symmetric(4), 7).is_zero());
}

TEST(Symbolic, SymmetricOmega7VanishesExactlyAtRationalPoints) {
  LinearFormMatrix x = LinearFormMatrix::generic_symmetric(4);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<long long> p(x.num_variables());
    for (auto& v : p) v = static_cast<long long>(rng() % 19) - 9;
    for (int i = 0; i < 4; ++i) p[i] += 40;  // diagonally dominant, so invertible
    auto coeffs = oracle::ordering_trace_coefficients(oracle::exact_log_derivatives(x, p), 7);
    EXPECT_EQ(coeffs.size(), 120u);
    for (const auto& [mask, c] : coeffs) EXPECT_EQ(c, 0) << mask;
  }
}

TEST(Symbolic, Closed) {
  RationalForm d3 = canonical_form_symbolic(LinearFormMatrix::generic(2), 3).exterior_derivative();
  d3.reduce();
  EXPECT_TRUE(d3.is_zero());
  RationalForm d5 = canonical_form_symbolic(LinearFormMatrix::generic_symmetric(3), 5).exterior_derivative();
  d5.reduce();
  EXPECT_TRUE(d5.is_zero());
  RationalForm d1 = canonical_form_symbolic(LinearFormMatrix::generic(3), 1).exterior_derivative();
  d1.reduce();
  EXPECT_TRUE(d1.is_zero());
}

TEST(Symbolic, TransposeRule) {
  for (int m : {2, 3}) {
    LinearFormMatrix x = LinearFormMatrix::generic(m);
    for (int n : {3, 5}) {
      if (n > x.num_variables()) continue;
      RationalForm f = canonical_form_symbolic(x, n);
      RationalForm ft = canonical_form_symbolic(x.transpose(), n);
      const int sign = (n * (n - 1) / 2) % 2 ? -1 : 1;
      EXPECT_EQ(ft, f.scaled(sign)) << m << " " << n;
    }
  }
}

TEST(Symbolic, GenericThreeByThreeOmega5Shape) {
  RationalForm f = canonical_form_symbolic(LinearFormMatrix::generic(3), 5);
  EXPECT_EQ(f.power(), 3);
  EXPECT_EQ(f.numerator().size(), 81u);
  EXPECT_FALSE(f.is_zero());
}

TEST(Symbolic, TooFewVariablesGiveZero) {
  EXPECT_TRUE(canonical_form_symbolic(laplacian(sunrise()), 5).is_zero());
}

TEST(Wedge, SignsAndAntisymmetry) {
  EXPECT_EQ(wedge_sign(0b01, 0b10), 1);
  EXPECT_EQ(wedge_sign(0b10, 0b01), -1);
  EXPECT_EQ(wedge_sign(0b11, 0b01), 0);
  EXPECT_EQ(wedge_sign(0b100, 0b011), 1);
  EXPECT_EQ(wedge_sign(0b010, 0b101), -1);
  LinearFormMatrix x = LinearFormMatrix::generic(3);
  RationalForm w3 = canonical_form_symbolic(x, 3);
  EXPECT_TRUE(wedge(w3, w3).is_zero());
  RationalForm w1 = canonical_form_symbolic(x, 1);
  RationalForm w13 = wedge(w1, w3);
  EXPECT_EQ(w13.degree(), 4);
  EXPECT_EQ(wedge(w3, w1), w13.scaled(-1));
}

TEST(Wedge, NumericMatchesSymbolic) {
  LinearFormMatrix x = LinearFormMatrix::generic(3);
  RationalForm w = wedge(canonical_form_symbolic(x, 3), canonical_form_symbolic(x, 5));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    auto p = generic_point(rng, x);
    for (int omitted : {0, 4, 8}) {
      const std::vector<int> degrees = {3, 5};
      double numeric = top_coefficient(x, degrees, p, omitted);
      double symbolic = evaluate_coefficient(w, all_but(9, omitted), p);
      EXPECT_NEAR(numeric, symbolic, 1e-8 * (1 + std::abs(symbolic)));
    }
  }
}

TEST(FormSpecTest, Validation) {
  EXPECT_EQ(FormSpec::parse("5,9").degrees(), (std::vector<int>{5, 9}));
  EXPECT_EQ(FormSpec({5, 9}).degree(), 14);
  EXPECT_EQ(FormSpec({5, 9}).to_string(), "5,9");
  EXPECT_THROW(FormSpec({3}), ValidationError);
  EXPECT_THROW(FormSpec({7}), ValidationError);
  EXPECT_THROW(FormSpec({9, 5}), ValidationError);
  EXPECT_THROW(FormSpec({5, 5}), ValidationError);
  EXPECT_THROW(FormSpec(std::vector<int>{}), ValidationError);
  EXPECT_THROW(FormSpec::parse("5,x"), ValidationError);
  EXPECT_THROW(FormSpec::parse("5 "), ValidationError);
}

TEST(Numeric, DegreeMismatchRejected) {
  LinearFormMatrix x = LinearFormMatrix::generic_symmetric(3);
  std::vector<double> p(6, 1.0);
  const std::vector<int> wrong = {3};
  EXPECT_THROW(top_coefficient(x, wrong, p, 0), ValidationError);
  EXPECT_THROW(canonical_form_numeric(laplacian(wheel(4)), FormSpec({5}), std::vector<double>(8, 1.0)),
               ValidationError);
}

TEST(Numeric, MatchesSymbolic) {
  std::mt19937_64 rng(3);
  struct Case {
    LinearFormMatrix x;
    int n;
  };
  std::vector<Case> cases = {{LinearFormMatrix::generic(2), 3},
                             {LinearFormMatrix::generic_symmetric(3), 5},
                             {laplacian(wheel(3)), 5}};
  for (const Case& c : cases) {
    RationalForm f = canonical_form_symbolic(c.x, c.n);
    for (int trial = 0; trial < 5; ++trial) {
      auto p = generic_point(rng, c.x);
      for (int omitted = 0; omitted < c.x.num_variables(); ++omitted) {
        const std::vector<int> degrees = {c.n};
        double numeric = top_coefficient(c.x, degrees, p, omitted);
        double symbolic = evaluate_coefficient(f, all_but(c.x.num_variables(), omitted), p);
        EXPECT_NEAR(numeric, symbolic, 1e-8 * (1 + std::abs(symbolic)));
      }
    }
  }
  // chart x_N = 1
  LinearFormMatrix x = LinearFormMatrix::generic_symmetric(3);
  RationalForm f = canonical_form_symbolic(x, 5);
  auto p = positive_point(rng, 6);
  p[5] = 1.0;
  p[0] += 3;
  p[1] += 3;
  p[2] += 3;
  EXPECT_NEAR(canonical_form_numeric(x, FormSpec({5}), p), evaluate_coefficient(f, 0b011111, p), 1e-10);
}

TEST(Numeric, MatchesOrderingOracle) {
  std::mt19937_64 rng(8);
  std::vector<LinearFormMatrix> matrices = {LinearFormMatrix::generic(3), LinearFormMatrix::generic_symmetric(4),
                                            laplacian(wheel(5)), laplacian(complete_bipartite(3, 3))};
  for (const LinearFormMatrix& x : matrices) {
    const int vars = x.num_variables();
    auto p = generic_point(rng, x);
    auto mats = log_derivatives(x, p);
    for (int n : {vars - 1}) {
      auto coeffs = oracle::ordering_trace_coefficients(mats, n);
      for (int omitted = 0; omitted < vars; omitted += 2) {
        const std::vector<int> degrees = {n};
        double expected = coeffs[all_but(vars, omitted)];
        EXPECT_NEAR(top_coefficient(x, degrees, p, omitted), expected, 1e-7 * (1 + std::abs(expected)));
      }
    }
  }
  // a two-factor wedge assembled by the oracle with its own sign rule
  LinearFormMatrix x = LinearFormMatrix::generic(3);
  auto p = generic_point(rng, x);
  auto mats = log_derivatives(x, p);
  auto c3 = oracle::ordering_trace_coefficients(mats, 3);
  auto c5 = oracle::ordering_trace_coefficients(mats, 5);
  const WedgeMask target = all_but(9, 2);
  double expected = 0;
  for (const auto& [s, v] : c3) {
    if ((s & target) != s) continue;
    expected += (inversions(s, target & ~s) % 2 ? -1.0 : 1.0) * v * c5[target & ~s];
  }
  const std::vector<int> degrees = {3, 5};
  EXPECT_NEAR(top_coefficient(x, degrees, p, 2), expected, 1e-7 * (1 + std::abs(expected)));
}

TEST(Numeric, LaplacianFormsAgreeWithGeneralPath) {
  std::mt19937_64 rng(21);
  std::vector<Graph> graphs = {wheel(3), wheel(4), complete_bipartite(3, 3), zigzag(5), wheel(5)};
  for (const Graph& g : graphs) {
    LinearFormMatrix x = laplacian(g);
    LaplacianForms lf(g);
    const int vars = g.num_edges();
    std::vector<std::vector<int>> specs = {{vars - 1}};
    if (vars - 1 > 5) specs.push_back({5, vars - 6});
    if (vars - 1 > 6) specs.push_back({1, 3, vars - 5});
    for (const auto& degrees : specs) {
      auto p = positive_point(rng, vars);
      for (int omitted : {0, vars / 2, vars - 1}) {
        double general = top_coefficient(x, degrees, p, omitted);
        double special = static_cast<double>(lf.top_coefficient(degrees, p, omitted));
        EXPECT_NEAR(special, general, 1e-8 * (1 + std::abs(general))) << vars << " " << degrees.size();
      }
    }
  }
}

TEST(Numeric, ProjectiveInvarianceAndHomogeneity) {
  std::mt19937_64 rng(4);
  for (const Graph& g : {wheel(3), wheel(5), zigzag(5)}) {
    LinearFormMatrix x = laplacian(g);
    const int vars = g.num_edges();
    const std::vector<int> degrees = {vars - 1};
    auto p = positive_point(rng, vars);
    std::vector<double> ratios;
    for (int i = 0; i < vars; ++i) {
      const double sign = i % 2 ? 1.0 : -1.0;  // (-1)^i with 1-based i
      ratios.push_back(top_coefficient(x, degrees, p, i) / (sign * p[i]));
    }
    for (double r : ratios) EXPECT_NEAR(r, ratios[0], 1e-9 * std::abs(ratios[0]));
    std::vector<double> scaled = p;
    const double t = 2.5;
    for (auto& v : scaled) v *= t;
    const double c = top_coefficient(x, degrees, p, 1);
    EXPECT_NEAR(top_coefficient(x, degrees, scaled, 1), c * std::pow(t, -(vars - 1)), 1e-9 * std::abs(c));
    LaplacianForms lf(g);
    EXPECT_NEAR(static_cast<double>(lf.density(degrees, p)), ratios[0], 1e-9 * std::abs(ratios[0]));
  }
}

TEST(Numeric, CongruenceInvariance) {
  std::mt19937_64 rng(12);
  for (const Graph& g : {wheel(3), wheel(5), zigzag(5)}) {
    LinearFormMatrix x = laplacian(g);
    const int vars = g.num_edges();
    const std::vector<int> degrees = {vars - 1};
    for (int trial = 0; trial < 4; ++trial) {
      IntMatrix p = random_unimodular(rng, x.size());
      LinearFormMatrix y = x.congruence(p);
      auto pt = positive_point(rng, vars);
      double a = top_coefficient(x, degrees, pt, 0);
      double b = top_coefficient(y, degrees, pt, 0);
      EXPECT_NEAR(b, a, 1e-10 * (1 + std::abs(a)));
    }
  }
}

TEST(Numeric, CycleBasisIndependence) {
  std::mt19937_64 rng(30);
  Graph g = wheel(5);
  CycleBasis base = cycle_basis(g);
  auto p = positive_point(rng, g.num_edges());
  const std::vector<int> degrees = {9};
  const long double reference = LaplacianForms(g, base).density(degrees, p);
  for (int trial = 0; trial < 5; ++trial) {
    IntMatrix u = random_unimodular(rng, base.size());
    CycleBasis other = make_cycle_basis(g, IntMatrix(u.transpose() * base.cycles));
    EXPECT_NEAR(static_cast<double>(LaplacianForms(g, other).density(degrees, p)), static_cast<double>(reference),
                1e-10 * std::abs(static_cast<double>(reference)));
  }
}

TEST(GraphForms, WheelFiveOmega9Split) {
  Graph g = wheel(5);
  LaplacianForms lf(g);
  MultilinearPoly psi = graph_polynomial(g);
  std::mt19937_64 rng(6);
  const std::vector<int> degrees = {9};
  for (int trial = 0; trial < 10; ++trial) {
    auto p = positive_point(rng, 10);
    const double s = psi.evaluate(p);
    double spokes = 1;
    for (int i = 0; i < 5; ++i) spokes *= p[i];
    // overall sign follows the edge order of wheel(5)
    const double expected = -18.0 * (1 / (s * s) + 12 * spokes / (s * s * s));
    EXPECT_NEAR(static_cast<double>(lf.density(degrees, p)), expected, 1e-9 * std::abs(expected));
  }
}

TEST(GraphForms, CompleteSixIdentity) {
  Graph g = complete(6);
  LaplacianForms lf(g);
  MultilinearPoly psi = graph_polynomial(g);
  std::mt19937_64 rng(9);
  const std::vector<int> degrees = {5, 9};
  const double factor = 362880.0 / 8.0;
  for (int trial = 0; trial < 3; ++trial) {
    auto p = positive_point(rng, 15);
    const double s = psi.evaluate(p);
    double prod = 1;
    for (double v : p) prod *= v;
    const double expected = factor * prod / (s * s * s);
    EXPECT_NEAR(std::abs(static_cast<double>(lf.density(degrees, p))), expected, 1e-8 * expected);
  }
}
