#include "periodforge/graph_complex.hpp"

#include <iomanip>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "periodforge/canonical_labeling.hpp"
#include "periodforge/enumerate.hpp"
#include "periodforge/error.hpp"

namespace periodforge {

namespace {

// Zero-class status per canonical key; shared across calls.
bool cached_zero_class(const std::string& key, const Graph& representative) {
  static std::mutex mutex;
  static std::unordered_map<std::string, bool> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  bool zero = representative.has_parallel_edges() || automorphism_edge_group(representative).has_odd;
  std::lock_guard lock(mutex);
  cache.emplace(key, zero);
  return zero;
}

}  // namespace

bool is_gc_graph(const Graph& g) {
  if (g.num_vertices() == 0 || !g.is_connected() || g.has_self_edges()) return false;
  for (int d : g.degrees()) {
    if (d < 3) return false;
  }
  return true;
}

bool is_zero_class(const Graph& g) {
  if (g.has_parallel_edges()) return true;
  Graph rep = canonical_form(g).representative;
  return cached_zero_class(canonical_key(rep), rep);
}

std::optional<Reduction> reduce_to_basis(const Graph& g) {
  if (g.has_self_edges()) throw ValidationError("graph complex generators have no self-edges");
  if (g.has_parallel_edges()) return std::nullopt;
  CanonicalForm cf = canonical_form(g);
  std::string key = canonical_key(cf.representative);
  if (cached_zero_class(key, cf.representative)) return std::nullopt;
  return Reduction{OrientedClass{std::move(cf.representative), std::move(key)}, cf.permutation.parity};
}

void ChainVector::add(const Graph& g, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto red = reduce_to_basis(g);
  if (!red) return;
  Rational c = red->sign > 0 ? coefficient : Rational(-coefficient);
  auto it = terms_.find(red->cls.key);
  if (it == terms_.end()) {
    terms_.emplace(red->cls.key, Term{std::move(red->cls.representative), c});
    return;
  }
  it->second.coefficient += c;
  if (it->second.coefficient == 0) terms_.erase(it);
}

ChainVector& ChainVector::operator+=(const ChainVector& other) {
  for (const auto& [key, term] : other.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, term);
    } else {
      it->second.coefficient += term.coefficient;
      if (it->second.coefficient == 0) terms_.erase(it);
    }
  }
  return *this;
}

ChainVector ChainVector::scaled(const Rational& factor) const {
  ChainVector out;
  if (factor == 0) return out;
  out.terms_ = terms_;
  for (auto& [key, term] : out.terms_) term.coefficient *= factor;
  return out;
}

Rational ChainVector::coefficient(const Graph& g) const {
  auto red = reduce_to_basis(g);
  if (!red) return 0;
  auto it = terms_.find(red->cls.key);
  if (it == terms_.end()) return 0;
  return red->sign > 0 ? it->second.coefficient : Rational(-it->second.coefficient);
}

ChainVector operator-(const ChainVector& a, const ChainVector& b) {
  ChainVector out = a;
  out += b.scaled(-1);
  return out;
}

ChainVector differential(const ChainVector& c) {
  ChainVector out;
  for (const auto& [key, term] : c.terms()) {
    const Graph& g = term.graph;
    for (int i = 0; i < g.num_edges(); ++i) {
      auto contracted = contract_edge(g, i, ContractionMode::kPolynomial);
      if (!contracted || contracted->has_self_edges()) continue;
      // (-1)^i with 1-based i
      out.add(*contracted, i % 2 == 0 ? Rational(-term.coefficient) : term.coefficient);
    }
  }
  return out;
}

// Graphs with parallel edges are zero classes, so only simple graphs are enumerated.
std::vector<OrientedClass> gc_basis(int loops, int edges) {
  std::vector<OrientedClass> basis;
  for (const Graph& g : enumerate_gc_graphs(loops, edges, true)) {
    std::string key = canonical_key(g);
    if (!cached_zero_class(key, g)) basis.push_back({g, std::move(key)});
  }
  return basis;
}

namespace {

SparseMatrix differential_matrix_between(const std::vector<OrientedClass>& source,
                                         const std::vector<OrientedClass>& target) {
  std::unordered_map<std::string, int> row_of;
  for (std::size_t r = 0; r < target.size(); ++r) row_of.emplace(target[r].key, static_cast<int>(r));
  SparseMatrix m;
  m.rows = static_cast<int>(target.size());
  m.cols = static_cast<int>(source.size());
  m.columns.resize(source.size());
  for (std::size_t c = 0; c < source.size(); ++c) {
    ChainVector single;
    single.add(source[c].representative, 1);
    const ChainVector image = differential(single);
    for (const auto& [key, term] : image.terms()) {
      auto it = row_of.find(key);
      if (it == row_of.end()) throw ComputationError("differential left the enumerated basis");
      m.columns[c].entries.emplace_back(it->second, term.coefficient);
    }
    std::sort(m.columns[c].entries.begin(), m.columns[c].entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return m;
}

std::vector<OrientedClass> basis_or_empty(int loops, int edges) {
  if (edges < loops || edges > 3 * loops - 3) return {};
  return gc_basis(loops, edges);
}

}  // namespace

SparseMatrix differential_matrix(int loops, int edges) {
  return differential_matrix_between(basis_or_empty(loops, edges), basis_or_empty(loops, edges - 1));
}

HomologyReport homology(int loops, bool allow_seven) {
  if (loops < 2) throw ValidationError("homology needs loops >= 2");
  if (loops > (allow_seven ? 7 : 6)) throw ValidationError("loop order above the configured bound");
  HomologyReport report;
  report.loops = loops;
  const int lo = loops;
  const int hi = 3 * loops - 3;
  std::map<int, std::vector<OrientedClass>> bases;
  for (int e = lo; e <= hi; ++e) bases[e] = basis_or_empty(loops, e);
  bases[lo - 1] = {};
  bases[hi + 1] = {};
  std::map<int, SparseMatrix> d;
  std::map<int, int> rank;
  for (int e = lo; e <= hi + 1; ++e) {
    d[e] = differential_matrix_between(bases[e], bases[e - 1]);
    const int exact = exact_rank(d[e]);
    const int modular = modular_rank(d[e]);
    if (modular > exact) throw ComputationError("modular rank exceeds exact rank");
    rank[e] = exact;
  }
  for (int e = lo; e <= hi; ++e) {
    BigradeReport b;
    b.edges = e;
    b.degree = e - 2 * loops;
    b.dimension = static_cast<int>(bases[e].size());
    b.rank_out = rank[e];
    b.rank_in = rank[e + 1];
    b.homology = b.dimension - b.rank_out - b.rank_in;
    b.d_squared_zero = is_zero(multiply(d[e], d[e + 1]));
    report.dims[b.degree] = b.homology;
    report.bigrades.push_back(b);
  }
  return report;
}

std::map<int, int> homology_dims(int loops) { return homology(loops).dims; }

nlohmann::json HomologyReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const BigradeReport& b : bigrades) {
    rows.push_back({{"edges", b.edges},
                    {"degree", b.degree},
                    {"basis_size", b.dimension},
                    {"rank", b.rank_out},
                    {"kernel_dim", b.dimension - b.rank_out},
                    {"homology_dim", b.homology},
                    {"d_squared_zero", b.d_squared_zero}});
  }
  return {{"loops", loops}, {"bigrades", rows}};
}

std::string HomologyReport::to_table() const {
  std::ostringstream os;
  os << "loops " << loops << "\n";
  os << std::left << std::setw(8) << "degree" << std::setw(7) << "edges" << std::setw(7) << "basis" << std::setw(8)
     << "rank d" << std::setw(7) << "ker d" << "H\n";
  for (const BigradeReport& b : bigrades) {
    os << std::setw(8) << ("H" + std::to_string(b.degree)) << std::setw(7) << b.edges << std::setw(7) << b.dimension
       << std::setw(8) << b.rank_out << std::setw(7) << b.dimension - b.rank_out << b.homology << "\n";
  }
  return os.str();
}

}  // namespace periodforge
