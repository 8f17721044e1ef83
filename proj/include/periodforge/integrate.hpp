#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "periodforge/form_numeric.hpp"
#include "periodforge/graph.hpp"
#include "periodforge/polynomial.hpp"
#include "periodforge/rational.hpp"

namespace periodforge {

class ChainVector;

// Either N / Psi^k against Omega_G, or a canonical form given by a FormSpec.
struct Integrand {
  enum class Kind { kRational, kCanonical };
  Graph graph;
  Kind kind = Kind::kRational;
  MultilinearPoly numerator = MultilinearPoly::one();
  int psi_power = 2;
  std::vector<int> form_degrees;
  int chart = -1;  // edge whose coordinate is set to 1 before evaluation; -1 = none
  std::vector<std::uint64_t> divergences;
  std::string description;

  bool divergent() const { return !divergences.empty(); }
};

// 1 / Psi^2; flags subdivergences instead of rejecting them.
Integrand residue_integrand(const Graph& g);
// N / Psi^k; requires deg N - k h = -|E|.
Integrand rational_integrand(const Graph& g, MultilinearPoly numerator, int psi_power, std::string description = "");
// omega^{n_1} ^ ... pulled back along the Laplacian; requires degree |E| - 1.
Integrand canonical_integrand(const Graph& g, const FormSpec& spec);

enum class Sampler { kTropical, kDirichlet };
std::string to_string(Sampler s);

struct IntegralEstimate {
  double mean = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string sampler;
  int orientation = 1;  // sign applied to report a positive single-graph value
};

struct IntegrationOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  Sampler sampler = Sampler::kTropical;
  int threads = 0;  // 0: PERIODFORGE_THREADS or hardware concurrency
  bool report_positive = true;
};

// Threads from PERIODFORGE_THREADS, else hardware concurrency.
int default_thread_count();

IntegralEstimate integrate(const Integrand& ig, const IntegrationOptions& options);
IntegralEstimate integrate_canonical(const Graph& g, const FormSpec& spec, const IntegrationOptions& options);
// Signed canonical integrals of the chain members, weighted by coefficients.
IntegralEstimate integrate_chain(const ChainVector& c, const FormSpec& spec, const IntegrationOptions& options);

// (mean - target) / stderr.
double compare_constant(const IntegralEstimate& e, double target);

// |mean - target| <= 3 stderr + 0.005 |target|.
bool within_tolerance(const IntegralEstimate& e, double target);
// Same test for a difference of two estimates with independent errors.
bool agree_within_tolerance(const IntegralEstimate& a, const IntegralEstimate& b);

}  // namespace periodforge
