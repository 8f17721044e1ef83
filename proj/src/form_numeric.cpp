#include "periodforge/form_numeric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "periodforge/error.hpp"
#include "periodforge/forms.hpp"

namespace periodforge {

FormSpec::FormSpec(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw ValidationError("form spec must be nonempty");
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    int n = degrees_[i];
    if (n < 5 || n % 4 != 1) throw ValidationError("form degrees must be 1 mod 4 and at least 5");
    if (i > 0 && n <= degrees_[i - 1]) throw ValidationError("form degrees must be strictly increasing");
  }
}

FormSpec FormSpec::parse(const std::string& text) {
  std::vector<int> degrees;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      degrees.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ValidationError("bad form degree '" + part + "'");
    } catch (const std::logic_error&) {
      throw ValidationError("bad form degree '" + part + "'");
    }
  }
  return FormSpec(std::move(degrees));
}

int FormSpec::degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }

std::string FormSpec::to_string() const {
  std::string s;
  for (int n : degrees_) s += (s.empty() ? "" : ",") + std::to_string(n);
  return s;
}

namespace {

using Real = long double;

void check_degrees(std::span<const int> degrees, int num_variables, int omitted) {
  int total = 0;
  for (int n : degrees) {
    if (n < 1) throw ValidationError("form degrees must be positive");
    total += n;
  }
  if (total != num_variables - 1) throw ValidationError("form degree must equal the number of variables minus one");
  if (omitted < 0 || omitted >= num_variables) throw ValidationError("omitted variable out of range");
  if (num_variables > kMaxVariables) throw ValidationError("at most 16 variables supported");
}

// Coefficient on `target` of the wedge of the tabulated factors, in order.
Real shuffle(const std::vector<std::vector<Real>>& tables, std::span<const int> degrees, std::size_t k,
             std::uint32_t target) {
  if (k + 1 == tables.size()) return tables[k][target];
  Real total = 0;
  const int n = degrees[k];
  for (std::uint32_t s = target; s; s = (s - 1) & target) {
    if (std::popcount(s) != n) continue;
    Real head = tables[k][s];
    if (head == 0) continue;
    std::uint32_t rest = target & ~s;
    total += wedge_sign(s, rest) * head * shuffle(tables, degrees, k + 1, rest);
  }
  return total;
}

bool any_even(std::span<const int> degrees) {
  return std::any_of(degrees.begin(), degrees.end(), [](int n) { return n % 2 == 0; });
}

}  // namespace

double top_coefficient(const LinearFormMatrix& x, std::span<const int> degrees, std::span<const double> point,
                       int omitted) {
  const int vars = x.num_variables();
  check_degrees(degrees, vars, omitted);
  const int m = x.size();
  Eigen::FullPivLU<Matrix<double>> lu(x.evaluate<double>(point));
  if (!lu.isInvertible()) throw ComputationError("matrix is singular at the evaluation point");
  std::vector<Matrix<double>> dm(vars);
  for (int j = 0; j < vars; ++j) dm[j] = lu.solve(x.coefficient(j).cast<double>());

  const std::uint32_t target = ((std::uint32_t{1} << vars) - 1) & ~(std::uint32_t{1} << omitted);
  const int max_degree = *std::max_element(degrees.begin(), degrees.end());
  std::vector<Matrix<double>> power(std::size_t{1} << vars);
  std::vector<std::vector<Real>> tables(degrees.size(), std::vector<Real>(std::size_t{1} << vars, 0));
  power[0] = Matrix<double>::Identity(m, m);
  // Masks are visited in increasing order, so every subset precedes its supersets.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t s = 0;; s = (s - target) & target) {
    masks.push_back(s);
    if (s == target) break;
  }
  for (std::uint32_t mask : masks) {
    if (power[mask].size() == 0) continue;
    const int size = std::popcount(mask);
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      if (degrees[k] == size) tables[k][mask] = power[mask].trace();
    }
    if (size == max_degree) continue;
    for (int j = 0; j < vars; ++j) {
      std::uint32_t bit = std::uint32_t{1} << j;
      if (!(target & bit) || (mask & bit)) continue;
      const int sign = std::popcount(mask >> (j + 1)) % 2 ? -1 : 1;
      Matrix<double> term = power[mask] * dm[j] * static_cast<double>(sign);
      if (power[mask | bit].size() == 0) {
        power[mask | bit] = term;
      } else {
        power[mask | bit] += term;
      }
    }
  }
  return static_cast<double>(shuffle(tables, degrees, 0, target));
}

LaplacianForms::LaplacianForms(const Graph& g, const CycleBasis& basis) {
  if (basis.cycles.cols() != g.num_edges()) throw ValidationError("basis dimension mismatch");
  chords_ = basis.cycles.transpose().cast<double>();
}

LaplacianForms::LaplacianForms(const Graph& g) : LaplacianForms(g, cycle_basis(g)) {}

// Y = diag(sqrt x) B with B = chords_. Then Lambda = Y^T Y and
// B Lambda^-1 B^T = diag(x)^-1/2 P diag(x)^-1/2 with P the projector onto col(Y).
Matrix<double> LaplacianForms::projector(std::span<const double> point) const {
  const int e = num_variables();
  const int h = static_cast<int>(chords_.cols());
  std::vector<int> order(e);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return point[a] > point[b]; });
  Matrix<double> y(e, h);
  for (int r = 0; r < e; ++r) {
    if (!(point[order[r]] > 0)) throw ComputationError("Laplacian forms need strictly positive coordinates");
    y.row(r) = chords_.row(order[r]) * std::sqrt(point[order[r]]);
  }
  Eigen::HouseholderQR<Matrix<double>> qr(y);
  Matrix<double> q = qr.householderQ() * Matrix<double>::Identity(e, h);
  Matrix<double> sorted = q * q.transpose();
  Matrix<double> p(e, e);
  for (int a = 0; a < e; ++a) {
    for (int b = 0; b < e; ++b) p(order[a], order[b]) = sorted(a, b);
  }
  return p;
}

// tr(Lambda^-1 dLambda ...) reduces to cyclic products of P over an ordering of
// the support. For odd n the n rotations of a cycle agree, so only orderings
// starting at the smallest element are summed.
long double LaplacianForms::top_coefficient(std::span<const int> degrees, std::span<const double> point,
                                       int omitted) const {
  const int vars = num_variables();
  check_degrees(degrees, vars, omitted);
  if (any_even(degrees)) return 0.0L;
  const Matrix<double> p = projector(point);
  const std::uint32_t target = ((std::uint32_t{1} << vars) - 1) & ~(std::uint32_t{1} << omitted);
  const int max_degree = *std::max_element(degrees.begin(), degrees.end());
  const std::size_t states = std::size_t{1} << vars;

  std::vector<std::vector<Real>> tables(degrees.size(), std::vector<Real>(states, 0));
  thread_local std::vector<Real> dp;
  dp.assign(states * vars, 0);
  std::vector<Real> inverse(vars);
  for (int j = 0; j < vars; ++j) inverse[j] = 1.0L / static_cast<Real>(point[j]);

  for (int s = 0; s < vars; ++s) {
    const std::uint32_t start = std::uint32_t{1} << s;
    if (!(target & start)) continue;
    const std::uint32_t above = target & ~((start << 1) - 1);
    dp[start * vars + s] = 1;
    for (std::uint32_t sub = 0;; sub = (sub - above) & above) {
      const std::uint32_t mask = start | sub;
      const int size = std::popcount(mask);
      const Real* row = &dp[mask * vars];
      for (std::size_t k = 0; k < degrees.size(); ++k) {
        if (degrees[k] != size) continue;
        Real closed = 0;
        for (int j = 0; j < vars; ++j) {
          if (row[j] != 0) closed += row[j] * p(j, s);
        }
        Real scale = size;
        for (std::uint32_t b = mask; b; b &= b - 1) scale *= inverse[std::countr_zero(b)];
        tables[k][mask] = closed * scale;
      }
      if (size < max_degree) {
        for (int j = 0; j < vars; ++j) {
          if (row[j] == 0) continue;
          for (std::uint32_t rest = above & ~mask; rest; rest &= rest - 1) {
            const int k = std::countr_zero(rest);
            const Real sign = std::popcount(mask >> (k + 1)) % 2 ? -1 : 1;
            dp[(mask | (std::uint32_t{1} << k)) * vars + k] += sign * row[j] * p(j, k);
          }
        }
      }
      if (sub == above) break;
    }
  }
  return shuffle(tables, degrees, 0, target);
}

namespace {

int largest_coordinate(std::span<const double> point) {
  return static_cast<int>(std::max_element(point.begin(), point.end()) - point.begin());
}

// Omega_G restricted to dx (omit i) has coefficient (-1)^(i+1) x_i for 0-based i.
double omega_coefficient(std::span<const double> point, int i) { return (i % 2 ? 1.0 : -1.0) * point[i]; }

}  // namespace

long double LaplacianForms::density(std::span<const int> degrees, std::span<const double> point) const {
  const int i = largest_coordinate(point);
  return top_coefficient(degrees, point, i) / omega_coefficient(point, i);
}

double canonical_form_numeric(const LinearFormMatrix& x, const FormSpec& spec, std::span<const double> point) {
  return top_coefficient(x, spec.degrees(), point, x.num_variables() - 1);
}

double canonical_density(const LinearFormMatrix& x, std::span<const int> degrees, std::span<const double> point) {
  const int i = largest_coordinate(point);
  return top_coefficient(x, degrees, point, i) / omega_coefficient(point, i);
}

}  // namespace periodforge
