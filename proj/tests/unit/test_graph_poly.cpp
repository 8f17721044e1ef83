#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "periodforge/builders.hpp"
#include "periodforge/error.hpp"
#include "periodforge/graph_poly.hpp"

using namespace periodforge;

namespace {

std::vector<Graph> corpus() {
  std::vector<Graph> out = {sunrise(), bubble(), dunce(), dumbbell(), wheel(3), wheel(4), zigzag(4), cycle(6),
                            complete(4), complete_bipartite(2, 3), banana(5)};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 60; ++i) {
    int v = 2 + static_cast<int>(rng() % 5);
    int e = std::min(10, v - 1 + 1 + static_cast<int>(rng() % 5));
    out.push_back(oracle::random_connected_graph(rng, v, e, i % 3 == 0, true));
  }
  return out;
}

std::vector<double> random_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

IntMatrix random_unimodular(std::mt19937_64& rng, int n) {
  IntMatrix p = IntMatrix::Identity(n, n);
  for (int step = 0; step < 3 * n; ++step) {
    int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (i == j) continue;
    long long c = static_cast<long long>(rng() % 3) - 1;
    p.col(i) += c * p.col(j);
  }
  if (rng() % 2) p.col(0) *= -1;
  return p;
}

}  // namespace

TEST(Psi, ReferenceExamples) {
  EXPECT_EQ(graph_polynomial(sunrise()).to_string(), "x1*x2 + x1*x3 + x2*x3");
  MultilinearPoly dunce_psi = graph_polynomial(dunce());
  MultilinearPoly expected =
      MultilinearPoly::from_terms({{0b1100, 1}, {0b1010, 1}, {0b1001, 1}, {0b0110, 1}, {0b0101, 1}});
  EXPECT_EQ(dunce_psi, expected);
  for (int n = 1; n <= 10; ++n) {
    std::map<std::uint64_t, std::int64_t> terms;
    for (int i = 0; i < n; ++i) terms[1ULL << i] = 1;
    EXPECT_EQ(graph_polynomial(cycle(n)), MultilinearPoly::from_terms(terms));
  }
  MultilinearPoly w3 = graph_polynomial(wheel(3));
  EXPECT_EQ(w3.size(), 16U);
  EXPECT_TRUE(w3.is_homogeneous_of_degree(3));
}

TEST(Psi, TreeIsOneAndDisconnectedIsZero) {
  Graph tree(3);
  tree.add_edge(0, 1);
  tree.add_edge(1, 2);
  EXPECT_EQ(graph_polynomial(tree), MultilinearPoly::one());
  EXPECT_TRUE(graph_polynomial(delete_edge(dumbbell(), 1)).is_zero());
}

TEST(Psi, MatchesKirchhoffDeterminantOracle) {
  std::mt19937_64 rng(8);
  for (const Graph& g : corpus()) {
    MultilinearPoly psi = graph_polynomial(g);
    for (int t = 0; t < 3; ++t) {
      auto x = random_point(rng, g.num_edges());
      EXPECT_NEAR(psi.evaluate(x), oracle::kirchhoff_psi(g, x), 1e-9 * std::max(1.0, psi.evaluate(x)));
    }
  }
}

TEST(Psi, RecursionAgreesWithTrees) {
  for (const Graph& g : {wheel(4), zigzag(5), complete(5), complete_bipartite(3, 3), wheel(6)}) {
    EXPECT_EQ(graph_polynomial_by_recursion(g), graph_polynomial_by_trees(g));
  }
}

TEST(Psi, CompleteBipartiteThreeFour) {
  MultilinearPoly psi = graph_polynomial(complete_bipartite(3, 4));
  EXPECT_TRUE(psi.is_homogeneous_of_degree(6));
  EXPECT_EQ(psi.size(), 432U);  // 3^(4-1) * 4^(3-1) spanning trees
}

TEST(Psi, Homogeneity) {
  for (const Graph& g : corpus()) {
    EXPECT_TRUE(graph_polynomial(g).is_homogeneous_of_degree(loop_number(g)));
  }
}

TEST(Psi, JsonOrderMatchesText) {
  auto j = graph_polynomial(sunrise()).to_json();
  ASSERT_EQ(j.size(), 3U);
  EXPECT_EQ(j[0][0], 1);
  EXPECT_EQ(j[0][1], nlohmann::json::array({1, 2}));
  EXPECT_EQ(j[2][1], nlohmann::json::array({2, 3}));
}

TEST(CycleBasis, Examples) {
  CycleBasis b = cycle_basis(bubble());
  ASSERT_EQ(b.size(), 1);
  EXPECT_EQ(std::abs(b.cycles(0, 0)), 1);
  EXPECT_EQ(std::abs(b.cycles(0, 1)), 1);
  EXPECT_EQ(cycle_basis(sunrise()).size(), 2);
  Graph tree(2);
  tree.add_edge(0, 1);
  EXPECT_EQ(cycle_basis(tree).size(), 0);
}

TEST(CycleBasis, RowsAreCyclesAndIntegral) {
  for (const Graph& g : corpus()) {
    CycleBasis b = cycle_basis(g);
    EXPECT_EQ(b.size(), loop_number(g));
    for (int i = 0; i < b.size(); ++i) {
      std::vector<long long> boundary(g.num_vertices(), 0);
      for (int e = 0; e < g.num_edges(); ++e) {
        boundary[g.edge(e).v] += b.cycles(i, e);
        boundary[g.edge(e).u] -= b.cycles(i, e);
      }
      for (long long x : boundary) EXPECT_EQ(x, 0);
    }
    EXPECT_TRUE(is_integral_basis(g, b));
  }
}

TEST(CycleBasis, RejectsNonCycles) {
  IntMatrix rows(1, 3);
  rows << 1, 0, 0;
  EXPECT_THROW(make_cycle_basis(sunrise(), rows), ValidationError);
  IntMatrix dependent(2, 3);
  dependent << 1, -1, 0, -1, 1, 0;
  EXPECT_THROW(make_cycle_basis(sunrise(), dependent), ValidationError);
}

TEST(Laplacian, SunriseWithChosenBasis) {
  IntMatrix rows(2, 3);
  rows << 1, -1, 0, 0, 1, 1;
  LinearFormMatrix m = laplacian(sunrise(), make_cycle_basis(sunrise(), rows));
  EXPECT_EQ(m.entry(0, 0).to_string(), "x1 + x2");
  EXPECT_EQ(m.entry(0, 1).to_string(), "-x2");
  EXPECT_EQ(m.entry(1, 0).to_string(), "-x2");
  EXPECT_EQ(m.entry(1, 1).to_string(), "x2 + x3");
  EXPECT_EQ(MultilinearPoly::from_polynomial(det_poly(m)), graph_polynomial(sunrise()));
}

TEST(Laplacian, WheelWithChosenBasis) {
  IntMatrix rows(3, 6);
  rows << 1, -1, 0, 0, 0, 1,  //
      -1, 0, 1, 0, 1, 0,      //
      0, 1, -1, 1, 0, 0;
  LinearFormMatrix m = laplacian(wheel(3), make_cycle_basis(wheel(3), rows));
  EXPECT_EQ(m.entry(0, 0).to_string(), "x1 + x2 + x6");
  EXPECT_EQ(m.entry(1, 1).to_string(), "x1 + x3 + x5");
  EXPECT_EQ(m.entry(2, 2).to_string(), "x2 + x3 + x4");
  EXPECT_TRUE(m.is_symmetric());
  Polynomial det = det_poly(m);
  EXPECT_EQ(det.size(), 16U);
  for (const auto& t : det.terms()) EXPECT_EQ(t.coefficient, 1);
}

TEST(Laplacian, BubbleIsOneByOne) {
  LinearFormMatrix m = laplacian(bubble());
  ASSERT_EQ(m.size(), 1);
  EXPECT_EQ(m.entry(0, 0).to_string(), "x1 + x2");
  EXPECT_EQ(det_poly(m).to_string(), "x1 + x2");
}

TEST(MatrixTree, DeterminantEqualsPsiWithRandomBases) {
  std::mt19937_64 rng(77);
  for (const Graph& g : corpus()) {
    const MultilinearPoly psi = graph_polynomial(g);
    CycleBasis b = cycle_basis(g);
    EXPECT_EQ(MultilinearPoly::from_polynomial(det_poly(laplacian(g, b))), psi);
    if (b.size() == 0) continue;
    for (int t = 0; t < 10; ++t) {
      IntMatrix p = random_unimodular(rng, b.size());
      CycleBasis changed = make_cycle_basis(g, p.transpose() * b.cycles);
      LinearFormMatrix lap = laplacian(g, changed);
      EXPECT_EQ(MultilinearPoly::from_polynomial(det_poly(lap)), psi);
      // covariance: Lambda' = P^T Lambda P
      LinearFormMatrix expected = laplacian(g, b).congruence(p);
      for (int i = 0; i < lap.size(); ++i) {
        for (int j = 0; j < lap.size(); ++j) EXPECT_EQ(lap.entry(i, j), expected.entry(i, j));
      }
    }
  }
}

TEST(ContractionDeletion, SunriseMiddleEdge) {
  auto [del, con] = contraction_deletion_split(sunrise(), 1);
  EXPECT_EQ(del.to_string(), "x1 + x3");
  EXPECT_EQ(con.to_string(), "x1*x3");
}

TEST(ContractionDeletion, SelfEdgeAndBridge) {
  auto [del_self, con_self] = contraction_deletion_split(dumbbell(), 0);
  EXPECT_TRUE(con_self.is_zero());
  EXPECT_FALSE(del_self.is_zero());
  auto [del_bridge, con_bridge] = contraction_deletion_split(dumbbell(), 1);
  EXPECT_TRUE(del_bridge.is_zero());
  EXPECT_FALSE(con_bridge.is_zero());
}

TEST(ContractionDeletion, IdentityAndRestrictionOnCorpus) {
  for (const Graph& g : corpus()) {
    const MultilinearPoly psi = graph_polynomial(g);
    for (int e = 0; e < g.num_edges(); ++e) {
      auto [del, con] = contraction_deletion_split(g, e);
      EXPECT_EQ(del.times_variable(e) + con, psi);
      EXPECT_EQ(psi.substitute_zero(e), con);
    }
  }
}

TEST(Positivity, PositiveAtPositivePoints) {
  std::mt19937_64 rng(4);
  for (const Graph& g : corpus()) {
    if (!g.is_connected()) continue;
    auto x = random_point(rng, g.num_edges());
    EXPECT_GT(graph_polynomial(g).evaluate(x), 0);
  }
}

TEST(Divergences, ReferenceExamples) {
  auto dunce_div = divergent_subgraphs(dunce());
  EXPECT_NE(std::find(dunce_div.begin(), dunce_div.end(), 0b1100ULL), dunce_div.end());
  EXPECT_EQ(divergent_subgraphs(sunrise()).size(), 3U);
  EXPECT_TRUE(divergent_subgraphs(wheel(3)).empty());
  EXPECT_TRUE(divergent_subgraphs(zigzag(5)).empty());
}

TEST(Divergences, MatchesDefinitionByBruteForce) {
  for (const Graph& g : {dunce(), wheel(3), banana(4), complete_bipartite(2, 3)}) {
    auto found = divergent_subgraphs(g);
    std::set<std::uint64_t> got(found.begin(), found.end());
    const std::uint64_t full = (1ULL << g.num_edges()) - 1;
    for (std::uint64_t m = 1; m < full; ++m) {
      // loop number of the spanned subgraph by Euler characteristic
      std::set<int> verts;
      Graph sub(g.num_vertices());
      for (int e = 0; e < g.num_edges(); ++e) {
        if (m >> e & 1U) {
          sub.add_edge(g.edge(e).u, g.edge(e).v);
          verts.insert(g.edge(e).u);
          verts.insert(g.edge(e).v);
        }
      }
      const int isolated = g.num_vertices() - static_cast<int>(verts.size());
      const int h = sub.num_edges() - static_cast<int>(verts.size()) + (sub.component_count() - isolated);
      const bool divergent = sub.num_edges() <= 2 * h;
      EXPECT_EQ(got.count(m) == 1, divergent) << "mask " << m;
    }
  }
}
