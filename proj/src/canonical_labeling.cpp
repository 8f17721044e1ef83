#include "periodforge/canonical_labeling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "periodforge/error.hpp"

namespace periodforge {

namespace {

constexpr long kMaxLeaves = 5'000'000;

class LabelingSearch {
 public:
  explicit LabelingSearch(const Graph& g) : g_(g), n_(g.num_vertices()), mult_(n_ * n_, 0) {
    for (const Edge& e : g.edges()) {
      if (e.is_self_edge()) {
        ++mult_[e.u * n_ + e.u];
      } else {
        ++mult_[e.u * n_ + e.v];
        ++mult_[e.v * n_ + e.u];
      }
    }
  }

  // Canonical labeling with automorphism pruning.
  std::vector<int> canonical_labeling() {
    collect_all_ = false;
    run();
    return best_labels_;
  }

  // Every automorphism, from an unpruned search.
  std::vector<std::vector<int>> automorphisms() {
    collect_all_ = true;
    run();
    std::vector<std::vector<int>> result = automorphisms_;
    std::vector<int> identity(n_);
    std::iota(identity.begin(), identity.end(), 0);
    result.push_back(identity);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }

 private:
  void run() {
    best_cert_.clear();
    best_labels_.clear();
    automorphisms_.clear();
    leaves_ = 0;
    if (n_ == 0) return;
    std::vector<std::vector<int>> initial_keys(n_);
    std::vector<int> deg = g_.degrees();
    for (int v = 0; v < n_; ++v) initial_keys[v] = {g_.weight(v), mult_[v * n_ + v], deg[v]};
    std::vector<int> colors = ranks(initial_keys);
    std::vector<int> prefix;
    search(colors, prefix);
  }

  static std::vector<int> ranks(const std::vector<std::vector<int>>& keys) {
    std::vector<std::vector<int>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(keys.size());
    for (std::size_t v = 0; v < keys.size(); ++v) {
      out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    }
    return out;
  }

  static int color_count(const std::vector<int>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  void refine(std::vector<int>& colors) const {
    int count = color_count(colors);
    while (true) {
      std::vector<std::vector<int>> keys(n_);
      for (int v = 0; v < n_; ++v) {
        std::vector<std::pair<int, int>> nbrs;
        for (int w = 0; w < n_; ++w) {
          if (w != v && mult_[v * n_ + w] > 0) nbrs.emplace_back(colors[w], mult_[v * n_ + w]);
        }
        std::sort(nbrs.begin(), nbrs.end());
        keys[v].push_back(colors[v]);
        for (auto [c, m] : nbrs) {
          keys[v].push_back(c);
          keys[v].push_back(m);
        }
      }
      colors = ranks(keys);
      int next = color_count(colors);
      if (next == count) return;
      count = next;
    }
  }

  std::vector<int> certificate(const std::vector<int>& labels) const {
    std::vector<int> inverse(n_);
    for (int v = 0; v < n_; ++v) inverse[labels[v]] = v;
    std::vector<int> cert;
    cert.reserve(n_ + n_ * (n_ + 1) / 2);
    for (int i = 0; i < n_; ++i) cert.push_back(g_.weight(inverse[i]));
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) cert.push_back(mult_[inverse[i] * n_ + inverse[j]]);
    }
    return cert;
  }

  void leaf(const std::vector<int>& labels) {
    if (++leaves_ > kMaxLeaves) throw ComputationError("canonical labeling search exceeded leaf cap");
    std::vector<int> cert = certificate(labels);
    if (best_cert_.empty() || (!collect_all_ && cert < best_cert_)) {
      best_cert_ = std::move(cert);
      best_labels_ = labels;
      return;
    }
    if (cert != best_cert_) return;
    std::vector<int> best_inverse(n_);
    for (int v = 0; v < n_; ++v) best_inverse[best_labels_[v]] = v;
    std::vector<int> phi(n_);
    for (int v = 0; v < n_; ++v) phi[v] = best_inverse[labels[v]];
    automorphisms_.push_back(std::move(phi));
  }

  // Candidates equivalent to an already explored one under automorphisms that
  // fix the prefix pointwise are skipped.
  bool equivalent_to_explored(int v, const std::vector<int>& explored, const std::vector<int>& prefix) const {
    if (explored.empty() || automorphisms_.empty()) return false;
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& phi : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return phi[p] == p; });
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) {
        int a = root(x), b = root(phi[x]);
        if (a != b) parent[a] = b;
      }
    }
    int rv = root(v);
    return std::any_of(explored.begin(), explored.end(), [&](int u) { return root(u) == rv; });
  }

  void search(std::vector<int> colors, std::vector<int>& prefix) {
    refine(colors);
    if (color_count(colors) == n_) {
      leaf(colors);
      return;
    }
    std::vector<int> size(n_, 0);
    for (int c : colors) ++size[c];
    int target = 0;
    while (size[target] < 2) ++target;
    std::vector<int> explored;
    for (int v = 0; v < n_; ++v) {
      if (colors[v] != target) continue;
      if (!collect_all_ && equivalent_to_explored(v, explored, prefix)) continue;
      std::vector<int> child(n_);
      for (int u = 0; u < n_; ++u) child[u] = 2 * colors[u] + (colors[u] == target && u != v ? 1 : 0);
      prefix.push_back(v);
      search(std::move(child), prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  const Graph& g_;
  int n_;
  std::vector<int> mult_;
  bool collect_all_ = false;
  long leaves_ = 0;
  std::vector<int> best_cert_;
  std::vector<int> best_labels_;
  std::vector<std::vector<int>> automorphisms_;
};

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(const Edge& e) { return {std::min(e.u, e.v), std::max(e.u, e.v)}; }

}  // namespace

int permutation_parity(std::span<const int> perm) {
  std::vector<char> seen(perm.size(), 0);
  int parity = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) parity = -parity;
  }
  return parity;
}

EdgePermutation make_edge_permutation(std::vector<int> image) {
  EdgePermutation p;
  p.parity = permutation_parity(image);
  p.image = std::move(image);
  return p;
}

CanonicalForm canonical_form(const Graph& g) {
  CanonicalForm out;
  LabelingSearch search(g);
  out.vertex_labels = search.canonical_labeling();
  const int m = g.num_edges();
  std::vector<std::tuple<int, int, int>> keyed;
  keyed.reserve(m);
  for (int i = 0; i < m; ++i) {
    auto [a, b] = edge_key({out.vertex_labels[g.edges()[i].u], out.vertex_labels[g.edges()[i].v]});
    keyed.emplace_back(a, b, i);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> weights(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) weights[out.vertex_labels[v]] = g.weight(v);
  std::vector<Edge> edges;
  std::vector<int> image(m);
  for (int pos = 0; pos < m; ++pos) {
    auto [a, b, i] = keyed[pos];
    edges.push_back({a, b});
    image[i] = pos;
  }
  out.representative = Graph(std::move(weights), std::move(edges));
  out.permutation = make_edge_permutation(std::move(image));
  return out;
}

std::string canonical_key(const Graph& representative) {
  std::ostringstream os;
  os << representative.num_vertices() << ':';
  for (int w : representative.weights()) os << w << ',';
  os << ';';
  for (const Edge& e : representative.edges()) os << e.u << '-' << e.v << ',';
  return os.str();
}

std::string canonical_key_of(const Graph& g) { return canonical_key(canonical_form(g).representative); }

bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  return canonical_form(a).representative == canonical_form(b).representative;
}

std::vector<std::vector<int>> vertex_automorphisms(const Graph& g) {
  LabelingSearch search(g);
  return search.automorphisms();
}

EdgeAutomorphismGroup automorphism_edge_group(const Graph& g) {
  EdgeAutomorphismGroup group;
  const int m = g.num_edges();
  // Bundles of edges sharing the same endpoint pair, in edge order.
  std::map<EdgeKey, std::vector<int>> bundles;
  for (int i = 0; i < m; ++i) bundles[edge_key(g.edges()[i])].push_back(i);

  std::set<std::vector<int>> induced;
  for (const auto& phi : vertex_automorphisms(g)) {
    std::vector<int> image(m);
    for (const auto& [key, members] : bundles) {
      const auto& target = bundles.at(edge_key({phi[key.first], phi[key.second]}));
      for (std::size_t k = 0; k < members.size(); ++k) image[members[k]] = target[k];
    }
    induced.insert(image);
  }

  std::uint64_t bundle_factor = 1;
  for (const auto& [key, members] : bundles) {
    for (std::size_t k = 2; k <= members.size(); ++k) bundle_factor *= k;
    if (members.size() >= 2) group.has_odd = true;
    for (std::size_t k = 0; k + 1 < members.size(); ++k) {
      std::vector<int> image(m);
      std::iota(image.begin(), image.end(), 0);
      std::swap(image[members[k]], image[members[k + 1]]);
      group.generators.push_back(make_edge_permutation(std::move(image)));
    }
  }
  group.order = static_cast<std::uint64_t>(induced.size()) * bundle_factor;

  // Greedy generating set for the induced bundle permutations.
  std::vector<int> identity(m);
  std::iota(identity.begin(), identity.end(), 0);
  std::set<std::vector<int>> closure{identity};
  std::vector<std::vector<int>> chosen;
  for (const auto& perm : induced) {
    if (permutation_parity(perm) < 0) group.has_odd = true;
    if (closure.count(perm)) continue;
    chosen.push_back(perm);
    std::vector<std::vector<int>> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& p : frontier) {
        for (const auto& gen : chosen) {
          std::vector<int> composed(m);
          for (int i = 0; i < m; ++i) composed[i] = gen[p[i]];
          if (closure.insert(composed).second) next.push_back(std::move(composed));
        }
      }
      frontier = std::move(next);
    }
    group.generators.push_back(make_edge_permutation(perm));
  }
  return group;
}

}  // namespace periodforge
