#include "periodforge/integrate.hpp"

#include <atomic>
#include <bit>
#include <mutex>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "periodforge/error.hpp"
#include "periodforge/graph_complex.hpp"
#include "periodforge/graph_poly.hpp"
#include "periodforge/tropical.hpp"

namespace periodforge {

namespace {

std::string subset_name(std::uint64_t mask) {
  std::string s = "{";
  for (int e = 0; mask >> e; ++e) {
    if ((mask >> e) & 1U) s += (s.size() > 1 ? "," : "") + std::to_string(e + 1);
  }
  return s + "}";
}

void check_homogeneity(const Graph& g, const MultilinearPoly& numerator, int psi_power) {
  if (numerator.is_zero()) throw ValidationError("numerator is zero");
  const int d = std::popcount(numerator.terms().begin()->first);
  if (!numerator.is_homogeneous_of_degree(d)) throw ValidationError("numerator is not homogeneous");
  if (d - psi_power * loop_number(g) != -g.num_edges()) {
    throw ValidationError("integrand is not projective: deg N - k*h must equal -|E|");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Moments {
  std::uint64_t n = 0;
  long double mean = 0;
  long double m2 = 0;

  void add(long double x) {
    ++n;
    long double delta = x - mean;
    mean += delta / static_cast<long double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const long double total = static_cast<long double>(n + o.n);
    const long double delta = o.mean - mean;
    mean += delta * static_cast<long double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<long double>(n) * static_cast<long double>(o.n) / total;
    n += o.n;
  }
};

class Evaluator {
 public:
  explicit Evaluator(const Integrand& ig) : ig_(ig), psi_(graph_polynomial(ig.graph)) {
    if (ig.kind == Integrand::Kind::kCanonical) forms_.emplace(ig.graph);
    if (psi_.is_zero()) throw ValidationError("graph polynomial vanishes");
  }

  // f with the integral equal to the integral of f * Omega_G.
  long double density(std::vector<long double>& log_point, std::vector<double>& point, LogPsi& lp) const {
    if (ig_.chart >= 0) {
      const long double shift = log_point[ig_.chart];
      for (std::size_t e = 0; e < point.size(); ++e) {
        log_point[e] -= shift;
        point[e] = static_cast<double>(std::exp(log_point[e]));
      }
    }
    lp = log_psi(psi_, log_point);
    if (ig_.kind == Integrand::Kind::kCanonical) return forms_->density(ig_.form_degrees, point);
    long double numerator = 0;
    for (const auto& [mask, c] : ig_.numerator.terms()) {
      long double log_term = 0;
      for (std::uint64_t m = mask; m; m &= m - 1) log_term += log_point[std::countr_zero(m)];
      numerator += static_cast<long double>(c) * std::exp(log_term - ig_.psi_power * lp.log_psi);
    }
    return numerator;
  }

 private:
  const Integrand& ig_;
  MultilinearPoly psi_;
  std::optional<LaplacianForms> forms_;
};

[[noreturn]] void report_bad_point(const std::vector<double>& point, long double value) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand value " << static_cast<double>(value) << " at x = (";
  for (std::size_t e = 0; e < point.size(); ++e) os << (e ? ", " : "") << point[e];
  os << ")";
  throw ComputationError(os.str());
}

}  // namespace

Integrand residue_integrand(const Graph& g) {
  if (!g.is_connected()) throw ValidationError("residue needs a connected graph");
  if (g.num_edges() != 2 * loop_number(g)) {
    throw ValidationError("residue integrand is not projective: |E| must equal 2h");
  }
  Integrand ig;
  ig.graph = g;
  ig.kind = Integrand::Kind::kRational;
  ig.numerator = MultilinearPoly::one();
  ig.psi_power = 2;
  ig.divergences = divergent_subgraphs(g);
  ig.description = "1/Psi^2";
  return ig;
}

Integrand rational_integrand(const Graph& g, MultilinearPoly numerator, int psi_power, std::string description) {
  if (!g.is_connected()) throw ValidationError("integrand needs a connected graph");
  check_homogeneity(g, numerator, psi_power);
  Integrand ig;
  ig.graph = g;
  ig.kind = Integrand::Kind::kRational;
  ig.description = description.empty() ? "(" + numerator.to_string() + ")/Psi^" + std::to_string(psi_power) : description;
  ig.numerator = std::move(numerator);
  ig.psi_power = psi_power;
  return ig;
}

Integrand canonical_integrand(const Graph& g, const FormSpec& spec) {
  if (!g.is_connected()) throw ValidationError("integrand needs a connected graph");
  if (spec.degree() != g.num_edges() - 1) throw ValidationError("form degree must equal |E| - 1");
  Integrand ig;
  ig.graph = g;
  ig.kind = Integrand::Kind::kCanonical;
  ig.form_degrees = spec.degrees();
  ig.description = "omega^(" + spec.to_string() + ")";
  return ig;
}

std::string to_string(Sampler s) { return s == Sampler::kTropical ? "tropical" : "dirichlet"; }

int default_thread_count() {
  if (const char* env = std::getenv("PERIODFORGE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

IntegralEstimate integrate(const Integrand& ig, const IntegrationOptions& options) {
  if (ig.divergent()) {
    throw ValidationError("integrand is divergent: subgraph " + subset_name(ig.divergences.front()) +
                          " has at most twice as many edges as loops");
  }
  if (options.samples < 2) throw ValidationError("need at least 2 samples");
  const int edges = ig.graph.num_edges();
  Evaluator evaluator(ig);
  std::optional<TropicalSampler> tropical;
  long double log_normalization = 0;
  long double tropical_exponent = 0;
  if (options.sampler == Sampler::kTropical) {
    tropical.emplace(ig.graph);
    log_normalization = std::log(static_cast<long double>(tropical->normalization()));
    tropical_exponent = static_cast<long double>(static_cast<double>(tropical->exponent()));
  } else {
    log_normalization = -std::lgamma(static_cast<long double>(edges));  // uniform density (N-1)!
  }

  const std::uint64_t shards = std::min<std::uint64_t>(64, options.samples);
  std::vector<Moments> results(shards);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_shard = [&](std::uint64_t shard) {
    std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(shard + 1)));
    const std::uint64_t count = options.samples / shards + (shard < options.samples % shards ? 1 : 0);
    Moments m;
    std::vector<long double> log_point(edges);
    std::vector<double> point(edges);
    for (std::uint64_t i = 0; i < count; ++i) {
      long double log_kernel = 0;
      if (tropical) {
        TropicalSampler::Sample s = tropical->sample(rng);
        log_point = std::move(s.log_point);
        point = std::move(s.point);
      } else {
        long double total = 0;
        for (int e = 0; e < edges; ++e) {
          log_point[e] = std::log(-std::log(static_cast<long double>(open_uniform(rng))));
          total += std::exp(log_point[e]);
        }
        for (int e = 0; e < edges; ++e) {
          log_point[e] -= std::log(total);
          point[e] = static_cast<double>(std::exp(log_point[e]));
        }
      }
      LogPsi lp{};
      long double f = evaluator.density(log_point, point, lp);
      if (tropical) log_kernel = -tropical_exponent * lp.log_psi_tropical;  // unit edge weights
      long double weight = f * std::exp(log_normalization - log_kernel);
      if (!std::isfinite(weight)) report_bad_point(point, weight);
      m.add(weight);
    }
    results[shard] = m;
  };

  const int threads = std::max(1, options.threads > 0 ? options.threads : default_thread_count());
  std::vector<std::thread> pool;
  auto worker = [&] {
    while (true) {
      std::uint64_t shard = next.fetch_add(1);
      if (shard >= shards) return;
      try {
        run_shard(shard);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = shards;
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Moments total;
  for (const Moments& m : results) total.merge(m);
  IntegralEstimate est;
  est.samples = total.n;
  est.seed = options.seed;
  est.sampler = to_string(options.sampler);
  est.mean = static_cast<double>(total.mean);
  est.standard_error = static_cast<double>(std::sqrt(total.m2 / static_cast<long double>(total.n - 1) /
                                                     static_cast<long double>(total.n)));
  if (options.report_positive && est.mean < 0) {
    est.mean = -est.mean;
    est.orientation = -1;
  }
  return est;
}

IntegralEstimate integrate_canonical(const Graph& g, const FormSpec& spec, const IntegrationOptions& options) {
  Integrand ig = canonical_integrand(g, spec);
  IntegrationOptions opts = options;
  if (opts.sampler == Sampler::kTropical) {
    try {
      TropicalSampler probe(g);
    } catch (const ValidationError&) {
      opts.sampler = Sampler::kDirichlet;
    }
  }
  return integrate(ig, opts);
}

IntegralEstimate integrate_chain(const ChainVector& c, const FormSpec& spec, const IntegrationOptions& options) {
  IntegralEstimate est;
  est.seed = options.seed;
  est.sampler = to_string(options.sampler);
  long double mean = 0, variance = 0;
  std::uint64_t index = 0;
  for (const auto& [key, term] : c.terms()) {
    if (term.graph.num_edges() != spec.degree() + 1) {
      throw ValidationError("chain member edge count must equal form degree + 1");
    }
    IntegrationOptions opts = options;
    opts.seed = splitmix64(options.seed + index++);
    opts.report_positive = false;
    IntegralEstimate part = integrate_canonical(term.graph, spec, opts);
    const long double coeff = static_cast<long double>(static_cast<double>(term.coefficient));
    mean += coeff * part.mean;
    variance += coeff * coeff * part.standard_error * part.standard_error;
    est.samples += part.samples;
    est.sampler = part.sampler;
  }
  est.mean = static_cast<double>(mean);
  est.standard_error = static_cast<double>(std::sqrt(variance));
  return est;
}

double compare_constant(const IntegralEstimate& e, double target) {
  if (e.standard_error <= 0) {
    if (e.mean == target) return 0.0;
    throw ValidationError("zero standard error with mean different from target");
  }
  return (e.mean - target) / e.standard_error;
}

bool within_tolerance(const IntegralEstimate& e, double target) {
  return std::abs(e.mean - target) <= 3.0 * e.standard_error + 0.005 * std::abs(target);
}

bool agree_within_tolerance(const IntegralEstimate& a, const IntegralEstimate& b) {
  const double combined = std::sqrt(a.standard_error * a.standard_error + b.standard_error * b.standard_error);
  return std::abs(a.mean - b.mean) <= 3.0 * combined + 0.005 * std::max(std::abs(a.mean), std::abs(b.mean));
}

}  // namespace periodforge
