#include "periodforge/enumerate.hpp"

#include <map>
#include <mutex>
#include <string>

#include "periodforge/canonical_labeling.hpp"
#include "periodforge/error.hpp"

namespace periodforge {

namespace {

using Catalog = std::map<std::string, Graph>;

void insert(Catalog& catalog, const Graph& g) {
  CanonicalForm cf = canonical_form(g);
  catalog.emplace(canonical_key(cf.representative), std::move(cf.representative));
}

std::vector<Graph> values(const Catalog& catalog) {
  std::vector<Graph> out;
  out.reserve(catalog.size());
  for (const auto& [key, g] : catalog) out.push_back(g);
  return out;
}

// Replaces edge e = (u, v) by (u, w), (w, v) for a new vertex w; returns w.
// The second half takes the last position.
int subdivide(Graph& g, int e) {
  std::vector<Edge> edges = g.edges();
  std::vector<int> weights = g.weights();
  const int w = static_cast<int>(weights.size());
  weights.push_back(0);
  const Edge old = edges[e];
  edges[e] = {old.u, w};
  edges.push_back({w, old.v});
  g = Graph(std::move(weights), std::move(edges));
  return w;
}

// Every connected cubic multigraph with h+1 loops arises from one with h loops
// by joining two subdivision points, or by attaching a lollipop at one.
Catalog grow_cubic(const Catalog& level) {
  Catalog next;
  for (const auto& [key, g] : level) {
    const int m = g.num_edges();
    for (int e1 = 0; e1 < m; ++e1) {
      for (int e2 = e1; e2 < m; ++e2) {
        Graph h = g;
        int a = subdivide(h, e1);
        int b = subdivide(h, e2 == e1 ? h.num_edges() - 1 : e2);
        h.add_edge(a, b);
        insert(next, h);
      }
      Graph h = g;
      int a = subdivide(h, e1);
      int b = h.add_vertex();
      h.add_edge(a, b);
      h.add_edge(b, b);
      insert(next, h);
    }
  }
  return next;
}

const std::vector<Catalog>& cubic_levels(int loops) {
  static std::mutex mutex;
  static std::vector<Catalog> levels;
  std::lock_guard lock(mutex);
  if (levels.empty()) {
    Catalog base;
    insert(base, Graph({0, 0}, {{0, 1}, {0, 1}, {0, 1}}));
    insert(base, Graph({0, 0}, {{0, 0}, {0, 1}, {1, 1}}));
    levels.push_back(std::move(base));
  }
  while (static_cast<int>(levels.size()) < loops - 1) levels.push_back(grow_cubic(levels.back()));
  return levels;
}

}  // namespace

std::vector<Graph> enumerate_cubic(int loops, bool allow_self_edges) {
  if (loops < 2) return {};
  if (loops > 8) throw ValidationError("cubic enumeration is capped at 8 loops");
  const Catalog& all = cubic_levels(loops)[loops - 2];
  std::vector<Graph> out;
  for (const auto& [key, g] : all) {
    if (allow_self_edges || !g.has_self_edges()) out.push_back(g);
  }
  return out;
}

// Closure of the trivalent graphs under weighted contraction. Every stable
// weighted graph of genus g >= 2 is such a contraction.
std::vector<Graph> enumerate_stable_weighted(int genus) {
  if (genus < 0) throw ValidationError("genus must be nonnegative");
  if (genus < 2) return {};
  Catalog all;
  Catalog frontier;
  for (const Graph& g : enumerate_cubic(genus, true)) insert(frontier, g);
  while (!frontier.empty()) {
    Catalog next;
    for (const auto& [key, g] : frontier) {
      all.emplace(key, g);
      for (int e = 0; e < g.num_edges(); ++e) {
        Graph c = *contract_edge(g, e, ContractionMode::kWeighted);
        CanonicalForm cf = canonical_form(c);
        std::string k = canonical_key(cf.representative);
        if (!all.count(k)) next.emplace(std::move(k), std::move(cf.representative));
      }
    }
    frontier = std::move(next);
  }
  return values(all);
}

// Every such graph contracts from a loopless cubic graph: split each vertex of
// degree > 3 into two of smaller degree joined by a new edge. The splits can be
// chosen to avoid creating parallel edges when the target is simple.
std::vector<Graph> enumerate_gc_graphs(int loops, int edges, bool simple_only) {
  if (loops < 2) throw ValidationError("graph complex enumeration needs loops >= 2");
  if (edges < loops || edges > 3 * loops - 3) {
    throw ValidationError("edge count outside the band [loops, 3*loops-3]");
  }
  if (edges == loops) return {};  // a single vertex would need self-edges
  Catalog frontier;
  for (const Graph& g : enumerate_cubic(loops, false)) {
    if (!simple_only || !g.has_parallel_edges()) frontier.emplace(canonical_key(g), g);
  }
  for (int current = 3 * loops - 3; current > edges; --current) {
    Catalog next;
    for (const auto& [key, g] : frontier) {
      for (int e = 0; e < g.num_edges(); ++e) {
        Graph c = *contract_edge(g, e, ContractionMode::kPolynomial);
        if (c.has_self_edges()) continue;
        if (simple_only && c.has_parallel_edges()) continue;
        insert(next, c);
      }
    }
    frontier = std::move(next);
  }
  return values(frontier);
}

}  // namespace periodforge
