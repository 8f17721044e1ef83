#include "periodforge/tropical.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "periodforge/error.hpp"

namespace periodforge {

double open_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

TropicalSampler::TropicalSampler(const Graph& g) : TropicalSampler(g, std::vector<Rational>(g.num_edges(), Rational(1))) {}

TropicalSampler::TropicalSampler(const Graph& g, std::vector<Rational> nu) : num_edges_(g.num_edges()), nu_(std::move(nu)) {
  if (num_edges_ < 1) throw ValidationError("tropical sampler needs at least one edge");
  if (num_edges_ > kMaxVariables) throw ValidationError("tropical sampler supports at most 16 edges");
  if (static_cast<int>(nu_.size()) != num_edges_) throw ValidationError("one weight per edge required");
  if (!g.is_connected()) throw ValidationError("tropical sampler needs a connected graph");
  const int h = loop_number(g);
  if (h == 0) throw ValidationError("tropical sampler needs a graph with loops");
  Rational total = 0;
  for (const Rational& v : nu_) {
    if (v <= 0) throw ValidationError("edge weights must be positive");
    total += v;
    nu_double_.push_back(static_cast<double>(v));
  }
  s_ = total / h;
  s_double_ = static_cast<double>(s_);

  const std::uint32_t all = (std::uint32_t{1} << num_edges_) - 1;
  std::vector<Rational> omega(std::size_t{all} + 1);
  std::vector<Rational> j(std::size_t{all} + 1);
  omega_.assign(std::size_t{all} + 1, 0.0);
  j_.assign(std::size_t{all} + 1, 0.0);
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    Rational weight = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) weight += nu_[std::countr_zero(m)];
    omega[mask] = weight - s_ * subgraph_loop_number(g, mask);
    if (mask != all && omega[mask] <= 0) {
      throw ValidationError("tropical sampler: edge subset with nonpositive convergence degree (subdivergence)");
    }
    omega_[mask] = static_cast<double>(omega[mask]);
  }
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    if (std::popcount(mask) == 1) {
      j[mask] = 1;
    } else {
      Rational sum = 0;
      for (std::uint32_t m = mask; m; m &= m - 1) {
        std::uint32_t rest = mask & ~(m & -m);
        sum += j[rest] / omega[rest];
      }
      j[mask] = sum;
    }
    j_[mask] = static_cast<double>(j[mask]);
  }
  normalization_ = j[all];
}

// Edges are removed largest first; the k-th smallest edge sits at
// log x = sum_{j >= k} log t_j with t_j = U^(1 / w(S_j)), S_j the j smallest.
TropicalSampler::Sample TropicalSampler::sample(std::mt19937_64& rng) const {
  Sample out;
  out.log_point.assign(num_edges_, 0.0L);
  std::uint32_t remaining = (std::uint32_t{1} << num_edges_) - 1;
  long double log_x = 0.0L;
  while (std::popcount(remaining) > 1) {
    double u = open_uniform(rng) * j_[remaining];
    int chosen = -1;
    double acc = 0.0;
    std::uint32_t rest_chosen = 0;
    for (std::uint32_t m = remaining; m; m &= m - 1) {
      const int e = std::countr_zero(m);
      const std::uint32_t rest = remaining & ~(std::uint32_t{1} << e);
      acc += j_[rest] / omega_[rest];
      chosen = e;
      rest_chosen = rest;
      if (u < acc) break;
    }
    out.log_point[chosen] = log_x;
    remaining = rest_chosen;
    log_x += std::log(static_cast<long double>(open_uniform(rng))) / omega_[remaining];
  }
  out.log_point[std::countr_zero(remaining)] = log_x;
  out.point.resize(num_edges_);
  for (int e = 0; e < num_edges_; ++e) out.point[e] = static_cast<double>(std::exp(out.log_point[e]));
  return out;
}

LogPsi log_psi(const MultilinearPoly& psi, const std::vector<long double>& log_point) {
  long double best = -std::numeric_limits<long double>::infinity();
  std::vector<long double> logs;
  logs.reserve(psi.size());
  for (const auto& [mask, c] : psi.terms()) {
    if (c <= 0) throw ComputationError("log_psi needs positive coefficients");
    long double l = std::log(static_cast<long double>(c));
    for (std::uint64_t m = mask; m; m &= m - 1) l += log_point[std::countr_zero(m)];
    logs.push_back(l);
    if (l > best) best = l;
  }
  long double sum = 0;
  for (long double l : logs) sum += std::exp(l - best);
  return {best + std::log(sum), best};
}

long double TropicalSampler::log_density_kernel(const MultilinearPoly& psi,
                                                const std::vector<long double>& log_point) const {
  long double value = -s_double_ * log_psi(psi, log_point).log_psi_tropical;
  for (int e = 0; e < num_edges_; ++e) value += (nu_double_[e] - 1.0) * log_point[e];
  return value;
}

}  // namespace periodforge
