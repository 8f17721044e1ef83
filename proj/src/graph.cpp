#include "periodforge/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "periodforge/canonical_labeling.hpp"
#include "periodforge/error.hpp"

namespace periodforge {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void check_edge(const Graph& g, int e) {
  if (e < 0 || e >= g.num_edges()) {
    throw ValidationError("unknown edge id " + std::to_string(e + 1));
  }
}

}  // namespace

Graph::Graph(int num_vertices) {
  if (num_vertices < 0) throw ValidationError("negative vertex count");
  weights_.assign(num_vertices, 0);
}

Graph::Graph(std::vector<int> weights, std::vector<Edge> edges)
    : weights_(std::move(weights)), edges_(std::move(edges)) {
  for (int w : weights_) {
    if (w < 0) throw ValidationError("negative vertex weight");
  }
  for (const Edge& e : edges_) {
    check_vertex(e.u);
    check_vertex(e.v);
  }
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= num_vertices()) {
    throw ValidationError("unknown vertex id " + std::to_string(v + 1));
  }
}

int Graph::add_vertex(int weight) {
  if (weight < 0) throw ValidationError("negative vertex weight");
  weights_.push_back(weight);
  return num_vertices() - 1;
}

int Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  edges_.push_back({u, v});
  return num_edges() - 1;
}

const Edge& Graph::edge(int e) const {
  check_edge(*this, e);
  return edges_[e];
}

int Graph::weight(int v) const {
  check_vertex(v);
  return weights_[v];
}

void Graph::set_weight(int v, int w) {
  check_vertex(v);
  if (w < 0) throw ValidationError("negative vertex weight");
  weights_[v] = w;
}

int Graph::total_weight() const { return std::accumulate(weights_.begin(), weights_.end(), 0); }

int Graph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (const Edge& e : edges_) d += (e.u == v) + (e.v == v);
  return d;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(num_vertices(), 0);
  for (const Edge& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

int Graph::component_count() const {
  std::vector<int> parent(num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  int components = num_vertices();
  for (const Edge& e : edges_) {
    int a = find_root(parent, e.u);
    int b = find_root(parent, e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

bool Graph::has_self_edges() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_self_edge(); });
}

bool Graph::has_parallel_edges() const {
  std::vector<std::pair<int, int>> keys;
  keys.reserve(edges_.size());
  for (const Edge& e : edges_) keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) != keys.end();
}

int loop_number(const Graph& g) {
  return g.num_edges() - g.num_vertices() + g.component_count();
}

int genus(const Graph& g) { return loop_number(g) + g.total_weight(); }

bool is_stable(const Graph& g) {
  std::vector<int> deg = g.degrees();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.weight(v) == 0 && deg[v] < 3) return false;
    if (g.weight(v) == 1 && deg[v] < 1) return false;
  }
  return true;
}

int subgraph_loop_number(const Graph& g, std::uint64_t mask) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  int loops = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!((mask >> e) & 1U)) continue;
    int a = find_root(parent, g.edges()[e].u);
    int b = find_root(parent, g.edges()[e].v);
    if (a == b) {
      ++loops;
    } else {
      parent[a] = b;
    }
  }
  return loops;
}

std::optional<Graph> contract_edge(const Graph& g, int e, ContractionMode mode) {
  check_edge(g, e);
  const Edge contracted = g.edges()[e];
  std::vector<Edge> edges;
  edges.reserve(g.num_edges() - 1);
  if (contracted.is_self_edge()) {
    if (mode == ContractionMode::kPolynomial) return std::nullopt;
    for (int i = 0; i < g.num_edges(); ++i) {
      if (i != e) edges.push_back(g.edges()[i]);
    }
    std::vector<int> weights = g.weights();
    ++weights[contracted.u];
    return Graph(std::move(weights), std::move(edges));
  }
  // Merge the larger endpoint into the smaller; later vertices shift down.
  const int keep = std::min(contracted.u, contracted.v);
  const int drop = std::max(contracted.u, contracted.v);
  auto remap = [&](int v) {
    if (v == drop) return keep;
    return v > drop ? v - 1 : v;
  };
  std::vector<int> weights;
  weights.reserve(g.num_vertices() - 1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == drop) continue;
    weights.push_back(v == keep ? g.weight(keep) + g.weight(drop) : g.weight(v));
  }
  for (int i = 0; i < g.num_edges(); ++i) {
    if (i == e) continue;
    edges.push_back({remap(g.edges()[i].u), remap(g.edges()[i].v)});
  }
  return Graph(std::move(weights), std::move(edges));
}

Graph delete_edge(const Graph& g, int e) {
  check_edge(g, e);
  std::vector<Edge> edges;
  edges.reserve(g.num_edges() - 1);
  for (int i = 0; i < g.num_edges(); ++i) {
    if (i != e) edges.push_back(g.edges()[i]);
  }
  return Graph(g.weights(), std::move(edges));
}

Graph two_vertex_join(const Graph& g1, int e1, const Graph& g2, int e2) {
  check_edge(g1, e1);
  check_edge(g2, e2);
  const Edge a = g1.edges()[e1];
  const Edge b = g2.edges()[e2];
  if (a.is_self_edge() || b.is_self_edge()) {
    throw ValidationError("two-vertex join requires edges with distinct endpoints");
  }
  Graph joined(g1.weights(), {});
  std::vector<int> map2(g2.num_vertices(), -1);
  map2[b.u] = a.u;
  map2[b.v] = a.v;
  for (int v = 0; v < g2.num_vertices(); ++v) {
    if (map2[v] < 0) map2[v] = joined.add_vertex(g2.weight(v));
  }
  for (int i = 0; i < g1.num_edges(); ++i) {
    if (i != e1) joined.add_edge(g1.edges()[i].u, g1.edges()[i].v);
  }
  for (int i = 0; i < g2.num_edges(); ++i) {
    if (i != e2) joined.add_edge(map2[g2.edges()[i].u], map2[g2.edges()[i].v]);
  }
  return joined;
}

Graph completion(const Graph& g) {
  std::vector<int> deg = g.degrees();
  std::vector<int> cubic;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (deg[v] == 3) {
      cubic.push_back(v);
    } else if (deg[v] != 4) {
      throw ValidationError("completion needs vertex degrees 3 and 4 only");
    }
  }
  if (cubic.size() != 4) throw ValidationError("completion needs exactly four degree-3 vertices");
  Graph completed = g;
  int apex = completed.add_vertex();
  for (int v : cubic) completed.add_edge(v, apex);
  return completed;
}

std::vector<Graph> decompletions(const Graph& completed) {
  for (int d : completed.degrees()) {
    if (d != 4) throw ValidationError("decompletions needs a 4-regular graph");
  }
  std::vector<Graph> result;
  for (int removed = 0; removed < completed.num_vertices(); ++removed) {
    Graph g;
    std::vector<int> map(completed.num_vertices(), -1);
    for (int v = 0; v < completed.num_vertices(); ++v) {
      if (v != removed) map[v] = g.add_vertex(completed.weight(v));
    }
    for (const Edge& e : completed.edges()) {
      if (e.u != removed && e.v != removed) g.add_edge(map[e.u], map[e.v]);
    }
    Graph rep = canonical_form(g).representative;
    if (std::find(result.begin(), result.end(), rep) == result.end()) result.push_back(rep);
  }
  return result;
}

Graph relabel(const Graph& g, std::span<const int> vertex_map, std::span<const int> edge_order) {
  if (static_cast<int>(vertex_map.size()) != g.num_vertices() ||
      static_cast<int>(edge_order.size()) != g.num_edges()) {
    throw ValidationError("relabel: size mismatch");
  }
  std::vector<int> weights(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) weights.at(vertex_map[v]) = g.weight(v);
  std::vector<Edge> edges(g.num_edges());
  for (int i = 0; i < g.num_edges(); ++i) {
    edges.at(edge_order[i]) = {vertex_map[g.edges()[i].u], vertex_map[g.edges()[i].v]};
  }
  return Graph(std::move(weights), std::move(edges));
}

}  // namespace periodforge
