#include <algorithm>
#include <numeric>
#include <functional>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "periodforge/builders.hpp"
#include "periodforge/canonical_labeling.hpp"
#include "periodforge/enumerate.hpp"
#include "periodforge/error.hpp"
#include "periodforge/graph.hpp"
#include "periodforge/graph_io.hpp"

using namespace periodforge;

namespace {

Graph random_relabeling(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> vmap(g.num_vertices());
  std::vector<int> order(g.num_edges());
  std::iota(vmap.begin(), vmap.end(), 0);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(vmap.begin(), vmap.end(), rng);
  std::shuffle(order.begin(), order.end(), rng);
  return relabel(g, vmap, order);
}

// True if some vertex permutation carries every edge e onto edge image[e].
bool induced_by_vertex_map(const Graph& g, const EdgePermutation& p) {
  std::vector<int> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < g.num_vertices() && ok; ++v) ok = g.weight(v) == g.weight(perm[v]);
    for (int e = 0; e < g.num_edges() && ok; ++e) {
      const Edge& a = g.edge(e);
      const Edge& b = g.edge(p.image[e]);
      int x = perm[a.u];
      int y = perm[a.v];
      ok = (x == b.u && y == b.v) || (x == b.v && y == b.u);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<Graph> small_corpus() {
  std::vector<Graph> out = {sunrise(), bubble(), dunce(), dumbbell(), wheel(3), wheel(4), zigzag(4), cycle(5),
                            complete(4), complete_bipartite(2, 3), banana(4)};
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    int v = 2 + static_cast<int>(rng() % 4);
    int e = std::min(8, v - 1 + 1 + static_cast<int>(rng() % 4));
    out.push_back(oracle::random_connected_graph(rng, v, e, true, true));
  }
  return out;
}

}  // namespace

TEST(LoopNumber, Examples) {
  EXPECT_EQ(loop_number(sunrise()), 2);
  Graph tree(4);
  tree.add_edge(0, 1);
  tree.add_edge(1, 2);
  tree.add_edge(1, 3);
  EXPECT_EQ(loop_number(tree), 0);
  Graph w5 = wheel(5);
  EXPECT_EQ(w5.num_vertices(), 6);
  EXPECT_EQ(w5.num_edges(), 10);
  EXPECT_EQ(loop_number(w5), w5.num_edges() - w5.num_vertices() + 1);
}

TEST(Genus, Examples) {
  EXPECT_EQ(genus(Graph({2}, {})), 2);
  EXPECT_EQ(genus(sunrise()), 2);
  EXPECT_EQ(genus(dumbbell()), 2);
}

TEST(Stability, Examples) {
  EXPECT_TRUE(is_stable(Graph({2}, {})));
  EXPECT_FALSE(is_stable(Graph({0}, {})));
  EXPECT_TRUE(is_stable(Graph({1, 1}, {{0, 1}})));
  EXPECT_TRUE(is_stable(dumbbell()));
  EXPECT_FALSE(is_stable(bubble()));
}

TEST(Contraction, SunriseMiddleEdgeGivesTwoPetals) {
  auto c = contract_edge(sunrise(), 1, ContractionMode::kWeighted);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->num_vertices(), 1);
  ASSERT_EQ(c->num_edges(), 2);
  EXPECT_TRUE(c->edge(0).is_self_edge());
  EXPECT_TRUE(c->edge(1).is_self_edge());
}

TEST(Contraction, SelfEdgeModes) {
  Graph g({3}, {{0, 0}});
  auto weighted = contract_edge(g, 0, ContractionMode::kWeighted);
  ASSERT_TRUE(weighted.has_value());
  EXPECT_EQ(weighted->weight(0), 4);
  EXPECT_EQ(weighted->num_edges(), 0);
  EXPECT_FALSE(contract_edge(g, 0, ContractionMode::kPolynomial).has_value());
}

TEST(Contraction, MergedWeightIsSum) {
  Graph g({1, 2}, {{0, 1}, {0, 1}});
  auto c = contract_edge(g, 0, ContractionMode::kWeighted);
  EXPECT_EQ(c->weight(0), 3);
  EXPECT_THROW(contract_edge(g, 5, ContractionMode::kWeighted), ValidationError);
}

TEST(Deletion, Examples) {
  Graph d = delete_edge(sunrise(), 1);
  EXPECT_EQ(d.num_edges(), 2);
  EXPECT_TRUE(is_isomorphic(d, bubble()));
  Graph bridge = delete_edge(dumbbell(), 1);
  EXPECT_EQ(bridge.component_count(), 2);
  Graph w3 = delete_edge(wheel(3), 3);
  EXPECT_TRUE(w3.is_connected());
  EXPECT_EQ(w3.num_edges(), 5);
  EXPECT_THROW(delete_edge(w3, 9), ValidationError);
}

TEST(CanonicalForm, Idempotent) {
  for (const Graph& g : small_corpus()) {
    Graph rep = canonical_form(g).representative;
    EXPECT_EQ(canonical_form(rep).representative, rep);
  }
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
  std::mt19937_64 rng(5);
  for (const Graph& g : small_corpus()) {
    if (!g.is_connected()) continue;
    const Graph rep = canonical_form(g).representative;
    for (int t = 0; t < 100; ++t) EXPECT_EQ(canonical_form(random_relabeling(g, rng)).representative, rep);
  }
}

TEST(CanonicalForm, AgreesWithBruteForceIsomorphism) {
  std::mt19937_64 rng(99);
  std::vector<Graph> graphs;
  for (int i = 0; i < 60; ++i) graphs.push_back(oracle::random_connected_graph(rng, 5, 7, false, true));
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i; j < graphs.size(); ++j) {
      EXPECT_EQ(is_isomorphic(graphs[i], graphs[j]), oracle::isomorphic(graphs[i], graphs[j]));
    }
  }
}

TEST(CanonicalForm, PermutationMapsEdgesOntoRepresentative) {
  std::mt19937_64 rng(3);
  for (const Graph& g : small_corpus()) {
    CanonicalForm cf = canonical_form(g);
    EXPECT_EQ(cf.permutation.parity, oracle::inversion_parity(cf.permutation.image));
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& a = g.edge(e);
      const Edge& b = cf.representative.edge(cf.permutation.image[e]);
      int x = cf.vertex_labels[a.u];
      int y = cf.vertex_labels[a.v];
      EXPECT_TRUE((x == b.u && y == b.v) || (x == b.v && y == b.u));
    }
  }
}

TEST(CanonicalForm, SunriseThreeCycleIsEven) {
  Graph g = sunrise();
  std::vector<int> vmap = {0, 1};
  std::vector<int> order = {1, 2, 0};
  Graph h = relabel(g, vmap, order);
  CanonicalForm a = canonical_form(g);
  CanonicalForm b = canonical_form(h);
  EXPECT_EQ(a.representative, b.representative);
  EXPECT_EQ(a.permutation.parity * b.permutation.parity, 1);
}

TEST(Automorphisms, ReferenceExamples) {
  EdgeAutomorphismGroup sun = automorphism_edge_group(sunrise());
  EXPECT_EQ(sun.order, 6U);
  EXPECT_TRUE(sun.has_odd);
  EdgeAutomorphismGroup db = automorphism_edge_group(dumbbell());
  EXPECT_EQ(db.order, 2U);
  EXPECT_TRUE(automorphism_edge_group(wheel(4)).has_odd);
  EXPECT_FALSE(automorphism_edge_group(wheel(3)).has_odd);
  EXPECT_EQ(automorphism_edge_group(wheel(3)).order, 24U);
}

TEST(Automorphisms, OrderDividesFactorialAndGeneratorsAreAutomorphisms) {
  for (const Graph& g : small_corpus()) {
    if (!g.is_connected() || g.num_vertices() > 7) continue;
    EdgeAutomorphismGroup grp = automorphism_edge_group(g);
    std::uint64_t factorial = 1;
    for (int k = 2; k <= g.num_edges(); ++k) factorial *= k;
    EXPECT_EQ(factorial % grp.order, 0U);
    for (const auto& p : grp.generators) {
      EXPECT_EQ(p.parity, oracle::inversion_parity(p.image));
      EXPECT_TRUE(induced_by_vertex_map(g, p));
    }
  }
}

TEST(Builders, Families) {
  EXPECT_EQ(wheel(3).num_vertices(), 4);
  EXPECT_EQ(wheel(3).num_edges(), 6);
  Graph k34 = complete_bipartite(3, 4);
  EXPECT_EQ(k34.num_edges(), 12);
  EXPECT_EQ(loop_number(k34), 6);
  EXPECT_EQ(loop_number(zigzag(5)), 5);
  EXPECT_EQ(zigzag(5).num_edges(), 10);
  EXPECT_TRUE(is_isomorphic(zigzag(3), wheel(3)));
  EXPECT_TRUE(is_isomorphic(zigzag(4), wheel(4)));
  EXPECT_FALSE(is_isomorphic(zigzag(5), wheel(5)));
  EXPECT_EQ(builtin_graph(Family::kCycle, 1).num_edges(), 1);
  EXPECT_THROW(wheel(2), ValidationError);
  EXPECT_THROW(named_graph("wheel:x"), ValidationError);
  EXPECT_EQ(named_graph("complete_bipartite:3,4"), k34);
  EXPECT_EQ(named_graph("sunrise"), sunrise());
}

TEST(Builders, WheelSpokesAreFirst) {
  Graph w = wheel(5);
  for (int e = 0; e < 5; ++e) EXPECT_EQ(w.edge(e).u, 0);
  for (int e = 5; e < 10; ++e) EXPECT_NE(w.edge(e).u, 0);
}

TEST(TwoVertexJoin, CountsAndLoops) {
  Graph j = two_vertex_join(bubble(), 0, bubble(), 0);
  EXPECT_EQ(j.num_edges(), 2);
  Graph w = two_vertex_join(wheel(3), 5, wheel(3), 5);
  EXPECT_EQ(w.num_edges(), 10);
  EXPECT_EQ(loop_number(w), 5);
  EXPECT_THROW(two_vertex_join(dumbbell(), 0, bubble(), 0), ValidationError);
}

TEST(Completion, WheelAndK5) {
  EXPECT_TRUE(is_isomorphic(completion(wheel(3)), complete(5)));
  auto dec = decompletions(complete(5));
  ASSERT_EQ(dec.size(), 1U);
  EXPECT_TRUE(is_isomorphic(dec[0], wheel(3)));
  Graph z5 = zigzag(5);
  auto back = decompletions(completion(z5));
  EXPECT_TRUE(std::any_of(back.begin(), back.end(), [&](const Graph& g) { return is_isomorphic(g, z5); }));
  EXPECT_THROW(completion(sunrise()), ValidationError);
  EXPECT_THROW(decompletions(wheel(3)), ValidationError);
}

TEST(StableGraphs, GenusTwoHasSeven) { EXPECT_EQ(enumerate_stable_weighted(2).size(), 7U); }

TEST(StableGraphs, GenusZeroEmpty) { EXPECT_TRUE(enumerate_stable_weighted(0).empty()); }

TEST(StableGraphs, GenusThreeMatchesExhaustiveOracle) {
  auto graphs = enumerate_stable_weighted(3);
  EXPECT_EQ(graphs.size(), oracle::stable_graph_count(3));
  for (const Graph& g : graphs) {
    EXPECT_TRUE(is_stable(g));
    EXPECT_EQ(genus(g), 3);
  }
}

TEST(StableGraphs, GenusTwoMatchesOracle) { EXPECT_EQ(oracle::stable_graph_count(2), 7U); }

TEST(GcGraphs, ThreeLoopsSixEdgesContainsWheel) {
  auto graphs = enumerate_gc_graphs(3, 6);
  EXPECT_TRUE(std::any_of(graphs.begin(), graphs.end(), [](const Graph& g) { return is_isomorphic(g, wheel(3)); }));
  EXPECT_TRUE(std::any_of(graphs.begin(), graphs.end(), [](const Graph& g) { return g.has_parallel_edges(); }));
}

TEST(GcGraphs, TwoLoopsOnlyParallel) {
  for (int e = 3; e <= 3; ++e) {
    auto graphs = enumerate_gc_graphs(2, e);
    EXPECT_FALSE(graphs.empty());
    for (const Graph& g : graphs) EXPECT_TRUE(g.has_parallel_edges());
  }
}

TEST(GcGraphs, FilterAndPairwiseDistinct) {
  for (int loops = 3; loops <= 4; ++loops) {
    for (int edges = loops + 1; edges <= 3 * loops - 3; ++edges) {
      auto graphs = enumerate_gc_graphs(loops, edges);
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        const Graph& g = graphs[i];
        EXPECT_FALSE(g.has_self_edges());
        EXPECT_EQ(loop_number(g), loops);
        EXPECT_EQ(g.num_edges(), edges);
        for (int d : g.degrees()) EXPECT_GE(d, 3);
        for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(oracle::isomorphic(graphs[i], graphs[j]));
      }
    }
  }
  EXPECT_THROW(enumerate_gc_graphs(3, 8), ValidationError);
}

TEST(GcGraphs, MatchesExhaustiveSearchAtFourLoops) {
  // all loopless multigraphs on V vertices with E = V + 3 edges and min degree 3
  for (int edges = 5; edges <= 9; ++edges) {
    const int vertices = edges - 3;
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < vertices; ++a) {
      for (int b = a + 1; b < vertices; ++b) slots.emplace_back(a, b);
    }
    std::set<std::string> found;
    std::vector<int> count(slots.size(), 0);
    std::function<void(std::size_t, int)> place = [&](std::size_t s, int left) {
      if (s == slots.size()) {
        if (left) return;
        Graph g(vertices);
        for (std::size_t k = 0; k < slots.size(); ++k) {
          for (int c = 0; c < count[k]; ++c) g.add_edge(slots[k].first, slots[k].second);
        }
        if (!g.is_connected()) return;
        for (int d : g.degrees()) {
          if (d < 3) return;
        }
        found.insert(oracle::canonical_string(g));
        return;
      }
      for (int c = 0; c <= left; ++c) {
        count[s] = c;
        place(s + 1, left - c);
      }
      count[s] = 0;
    };
    place(0, edges);
    EXPECT_EQ(enumerate_gc_graphs(4, edges).size(), found.size()) << "edges " << edges;
  }
}

TEST(Invariants, ContractionCommutes) {
  for (const Graph& g : small_corpus()) {
    if (g.num_edges() > 8) continue;
    for (int i = 0; i < g.num_edges(); ++i) {
      for (int j = i + 1; j < g.num_edges(); ++j) {
        if (g.edge(i).is_self_edge() || g.edge(j).is_self_edge()) continue;
        // after removing i, edge j shifts down by one
        auto a = contract_edge(*contract_edge(g, i, ContractionMode::kWeighted), j - 1, ContractionMode::kWeighted);
        auto b = contract_edge(*contract_edge(g, j, ContractionMode::kWeighted), i, ContractionMode::kWeighted);
        EXPECT_EQ(canonical_key_of(*a), canonical_key_of(*b));
      }
    }
  }
}

TEST(Invariants, WeightedContractionPreservesGenus) {
  for (const Graph& g : small_corpus()) {
    if (!g.is_connected()) continue;
    for (int e = 0; e < g.num_edges(); ++e) {
      EXPECT_EQ(genus(*contract_edge(g, e, ContractionMode::kWeighted)), genus(g));
    }
  }
}

TEST(GraphIo, ParsesAndRoundTrips) {
  Graph g = parse_graph_text("# comment\nv 10 1\nv 20\ne 1 10 20\ne 2 20 20  # self-edge\n");
  EXPECT_EQ(g.num_vertices(), 2);
  EXPECT_EQ(g.weight(0), 1);
  EXPECT_TRUE(g.edge(1).is_self_edge());
  EXPECT_EQ(parse_graph_text(format_graph(wheel(4))), wheel(4));
  EXPECT_EQ(read_graph_file(std::string(PERIODFORGE_DATA_DIR) + "/graphs/sunrise.g"), sunrise());
}

TEST(GraphIo, RejectsMalformedInput) {
  EXPECT_THROW(parse_graph_text("v 1\nv 2\ne 2 1 2\n"), ValidationError);
  EXPECT_THROW(parse_graph_text("v 1\ne 1 1 3\n"), ValidationError);
  EXPECT_THROW(parse_graph_text("v 1 -1\n"), ValidationError);
  EXPECT_THROW(parse_graph_text("x 1\n"), ValidationError);
  EXPECT_THROW(parse_graph_text("v 1\nv 1\n"), ValidationError);
  EXPECT_THROW(read_graph_file("/nonexistent/graph.g"), ValidationError);
}
