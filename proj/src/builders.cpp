#include "periodforge/builders.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "periodforge/error.hpp"

namespace periodforge {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

// Vertex 0 is the hub and vertices 1..n the rim. Spoke i runs hub -> rim i;
// rim edge n+i runs rim (i mod n)+1 -> rim ((i+1) mod n)+1.
Graph wheel(int spokes) {
  require(spokes >= 3, "wheel needs at least 3 spokes");
  Graph g(spokes + 1);
  for (int i = 1; i <= spokes; ++i) g.add_edge(0, i);
  for (int i = 1; i <= spokes; ++i) g.add_edge(i % spokes + 1, (i + 1) % spokes + 1);
  return g;
}

// Triangle strip on vertices 0..n with its two ends joined.
Graph zigzag(int loops) {
  require(loops >= 3, "zigzag needs at least 3 loops");
  Graph g(loops + 1);
  for (int i = 0; i + 1 <= loops; ++i) g.add_edge(i, i + 1);
  for (int i = 0; i + 2 <= loops; ++i) g.add_edge(i, i + 2);
  g.add_edge(0, loops);
  return g;
}

Graph cycle(int n) {
  require(n >= 1, "cycle needs at least 1 edge");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// Two vertices; edges 1 and 2 run 0 -> 1, later edges 1 -> 0.
Graph banana(int edges) {
  require(edges >= 1, "banana needs at least 1 edge");
  Graph g(2);
  for (int i = 0; i < edges; ++i) {
    if (i < 2) {
      g.add_edge(0, 1);
    } else {
      g.add_edge(1, 0);
    }
  }
  return g;
}

Graph complete(int n) {
  require(n >= 1, "complete graph needs at least 1 vertex");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph complete_bipartite(int a, int b) {
  require(a >= 1 && b >= 1, "complete bipartite graph needs nonempty sides");
  Graph g(a + b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

Graph bubble() { return banana(2); }
Graph sunrise() { return banana(3); }

// Apex 0 joined to 1 and 2, which carry a double edge.
Graph dunce() { return Graph({0, 0, 0}, {{0, 1}, {0, 2}, {1, 2}, {1, 2}}); }

Graph dumbbell() { return Graph({0, 0}, {{0, 0}, {0, 1}, {1, 1}}); }

Graph builtin_graph(Family family, int n, int m) {
  switch (family) {
    case Family::kWheel: return wheel(n);
    case Family::kZigzag: return zigzag(n);
    case Family::kCycle: return cycle(n);
    case Family::kBanana: return banana(n);
    case Family::kComplete: return complete(n);
    case Family::kCompleteBipartite: return complete_bipartite(n, m);
  }
  throw ValidationError("unknown graph family");
}

namespace {

std::vector<int> parse_args(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view part = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw ValidationError("bad builtin graph parameter '" + std::string(part) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

bool is_named_graph(std::string_view spec) {
  std::string_view name = spec.substr(0, spec.find(':'));
  for (std::string_view known : {"wheel", "zigzag", "cycle", "banana", "complete", "complete_bipartite",
                                 "bubble", "sunrise", "dunce", "dumbbell"}) {
    if (name == known) return true;
  }
  return false;
}

Graph named_graph(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::vector<int> args = colon == std::string_view::npos ? std::vector<int>{} : parse_args(spec.substr(colon + 1));
  auto arity = [&](std::size_t k) {
    require(args.size() == k, "builtin '" + std::string(name) + "' takes " + std::to_string(k) + " parameter(s)");
  };
  if (name == "bubble") return arity(0), bubble();
  if (name == "sunrise") return arity(0), sunrise();
  if (name == "dunce") return arity(0), dunce();
  if (name == "dumbbell") return arity(0), dumbbell();
  if (name == "wheel") return arity(1), wheel(args[0]);
  if (name == "zigzag") return arity(1), zigzag(args[0]);
  if (name == "cycle") return arity(1), cycle(args[0]);
  if (name == "banana") return arity(1), banana(args[0]);
  if (name == "complete") return arity(1), complete(args[0]);
  if (name == "complete_bipartite") return arity(2), complete_bipartite(args[0], args[1]);
  throw ValidationError("unknown builtin graph '" + std::string(name) + "'");
}

}  // namespace periodforge
