#include "periodforge/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "periodforge/builders.hpp"
#include "periodforge/error.hpp"

namespace periodforge {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ValidationError("graph file line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph parse_graph(std::istream& in) {
  Graph g;
  std::map<long, int> vertex_index;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "v") {
      long id = 0;
      if (!(ls >> id)) fail(line_no, "expected vertex id");
      int weight = 0;
      if (!(ls >> weight)) {
        if (!ls.eof()) fail(line_no, "malformed weight");
        weight = 0;
      }
      if (weight < 0) fail(line_no, "negative weight");
      if (vertex_index.count(id)) fail(line_no, "duplicate vertex id " + std::to_string(id));
      vertex_index[id] = g.add_vertex(weight);
    } else if (kind == "e") {
      long id = 0, u = 0, v = 0;
      if (!(ls >> id >> u >> v)) fail(line_no, "expected 'e <id> <u> <v>'");
      if (id != g.num_edges() + 1) fail(line_no, "edge ids must be 1..|E| in file order");
      auto iu = vertex_index.find(u);
      auto iv = vertex_index.find(v);
      if (iu == vertex_index.end() || iv == vertex_index.end()) fail(line_no, "edge references undeclared vertex");
      g.add_edge(iu->second, iv->second);
    } else {
      fail(line_no, "unknown declaration '" + kind + "'");
    }
    std::string extra;
    if (ls >> extra) fail(line_no, "trailing tokens");
  }
  return g;
}

Graph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

Graph load_graph(const std::string& spec) {
  if (is_named_graph(spec)) return named_graph(spec);
  return read_graph_file(spec);
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  for (int v = 0; v < g.num_vertices(); ++v) {
    os << "v " << v + 1;
    if (g.weight(v) != 0) os << ' ' << g.weight(v);
    os << '\n';
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    os << "e " << e + 1 << ' ' << g.edges()[e].u + 1 << ' ' << g.edges()[e].v + 1 << '\n';
  }
  return os.str();
}

}  // namespace periodforge
