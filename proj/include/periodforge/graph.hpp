#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace periodforge {

// Oriented from u to v; orientation matters only for cycle bases.
struct Edge {
  int u = 0;
  int v = 0;
  bool is_self_edge() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Vertex-weighted multigraph with an ordered edge list. Vertices and edges are
// 0-based internally; text and reports use 1-based ids.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);
  Graph(std::vector<int> weights, std::vector<Edge> edges);

  int add_vertex(int weight = 0);
  int add_edge(int u, int v);

  int num_vertices() const { return static_cast<int>(weights_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const;
  const std::vector<Edge>& edges() const { return edges_; }
  int weight(int v) const;
  const std::vector<int>& weights() const { return weights_; }
  void set_weight(int v, int w);
  int total_weight() const;

  int degree(int v) const;
  std::vector<int> degrees() const;
  int component_count() const;
  bool is_connected() const { return component_count() == 1; }
  bool has_self_edges() const;
  bool has_parallel_edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  std::vector<int> weights_;
  std::vector<Edge> edges_;
};

int loop_number(const Graph& g);
int genus(const Graph& g);
bool is_stable(const Graph& g);

// Loop number of the subgraph spanned by the edges in `mask` and their endpoints.
int subgraph_loop_number(const Graph& g, std::uint64_t mask);

enum class ContractionMode { kWeighted, kPolynomial };

// kPolynomial returns nullopt (the zero graph) for a self-edge.
std::optional<Graph> contract_edge(const Graph& g, int e, ContractionMode mode);
Graph delete_edge(const Graph& g, int e);

Graph two_vertex_join(const Graph& g1, int e1, const Graph& g2, int e2);
Graph completion(const Graph& g);
std::vector<Graph> decompletions(const Graph& completed);

// New graph with vertices relabeled by `vertex_map` and edges reordered so that
// new edge edge_order[i] is old edge i.
Graph relabel(const Graph& g, std::span<const int> vertex_map, std::span<const int> edge_order);

}  // namespace periodforge
