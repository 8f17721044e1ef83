#include "periodforge/voronoi.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "periodforge/error.hpp"

namespace periodforge {

QuadraticForm::QuadraticForm(RationalMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw ValidationError("quadratic form must be square");
  for (int i = 0; i < matrix_.rows(); ++i) {
    for (int j = 0; j < i; ++j) {
      if (matrix_(i, j) != matrix_(j, i)) throw ValidationError("quadratic form must be symmetric");
    }
  }
}

Rational QuadraticForm::value(const LatticeVector& x) const {
  if (static_cast<int>(x.size()) != dimension()) throw ValidationError("vector dimension mismatch");
  Rational total = 0;
  for (int i = 0; i < dimension(); ++i) {
    for (int j = 0; j < dimension(); ++j) total += matrix_(i, j) * x[i] * x[j];
  }
  return total;
}

bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.dimension() != b.dimension()) return false;
  for (int i = 0; i < a.dimension(); ++i) {
    for (int j = 0; j < a.dimension(); ++j) {
      if (a.matrix_(i, j) != b.matrix_(i, j)) return false;
    }
  }
  return true;
}

bool QuadraticForm::is_positive_definite() const { return ldl(matrix_).has_value(); }

QuadraticForm QuadraticForm::transformed(const IntMatrix& p) const {
  const int n = dimension();
  if (p.rows() != n) throw ValidationError("transform dimension mismatch");
  const int k = static_cast<int>(p.cols());
  RationalMatrix half = RationalMatrix::Zero(n, k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int l = 0; l < n; ++l) half(i, j) += matrix_(i, l) * p(l, j);
    }
  }
  RationalMatrix prod = RationalMatrix::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int l = 0; l < n; ++l) prod(i, j) += Rational(p(l, i)) * half(l, j);
    }
  }
  return QuadraticForm(prod);
}

QuadraticForm parse_quadratic_form(std::istream& in) {
  int g = 0;
  if (!(in >> g) || g < 1) throw ValidationError("matrix file: expected a positive dimension");
  if (g > 8) throw ValidationError("matrix file: dimension above 8 not supported");
  RationalMatrix m(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      std::string token;
      if (!(in >> token)) throw ValidationError("matrix file: expected " + std::to_string(g * g) + " entries");
      m(i, j) = parse_rational(token);
    }
  }
  std::string extra;
  if (in >> extra) throw ValidationError("matrix file: trailing tokens");
  return QuadraticForm(m);
}

QuadraticForm read_quadratic_form_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
  return parse_quadratic_form(in);
}

std::string format_matrix(const RationalMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    os << '[';
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(Rational(m(i, j)));
    os << "]\n";
  }
  return os.str();
}

std::optional<LdlFactorization> ldl(const RationalMatrix& m) {
  const int n = static_cast<int>(m.rows());
  LdlFactorization f{RationalMatrix::Identity(n, n), RationalVector::Zero(n)};
  for (int j = 0; j < n; ++j) {
    Rational dj = m(j, j);
    for (int k = 0; k < j; ++k) dj -= f.l(j, k) * f.l(j, k) * f.d(k);
    if (dj <= 0) return std::nullopt;
    f.d(j) = dj;
    for (int i = j + 1; i < n; ++i) {
      Rational v = m(i, j);
      for (int k = 0; k < j; ++k) v -= f.l(i, k) * f.l(j, k) * f.d(k);
      f.l(i, j) = v / dj;
    }
  }
  return f;
}

namespace {

long long floor_of(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return static_cast<long long>(q);
}

}  // namespace

// q(x) = sum_i d_i (x_i + sum_{j > i} l_ji x_j)^2, enumerated from the last
// coordinate down with exact bounds on each coordinate.
std::vector<LatticeVector> short_vectors(const QuadraticForm& q, const Rational& bound) {
  auto f = ldl(q.matrix());
  if (!f) throw ValidationError("quadratic form is not positive definite");
  const int n = q.dimension();
  std::vector<LatticeVector> out;
  LatticeVector x(n, 0);
  std::function<void(int, const Rational&)> recurse = [&](int i, const Rational& remaining) {
    if (i < 0) {
      if (std::any_of(x.begin(), x.end(), [](long long v) { return v != 0; })) out.push_back(x);
      return;
    }
    Rational center = 0;
    for (int j = i + 1; j < n; ++j) center -= f->l(j, i) * x[j];
    auto cost = [&](long long v) -> Rational {
      Rational t = Rational(v) - center;
      return f->d(i) * t * t;
    };
    const long long start = floor_of(center);
    for (long long v = start; cost(v) <= remaining; --v) {
      x[i] = v;
      recurse(i - 1, remaining - cost(v));
    }
    for (long long v = start + 1; cost(v) <= remaining; ++v) {
      x[i] = v;
      recurse(i - 1, remaining - cost(v));
    }
    x[i] = 0;
  };
  recurse(n - 1, bound);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticeVector> minimal_vectors(const QuadraticForm& q) {
  if (!q.is_positive_definite()) throw ValidationError("quadratic form is not positive definite");
  if (q.dimension() > 5) throw ValidationError("minimal vectors supported up to dimension 5");
  Rational bound = q.matrix()(0, 0);
  for (int i = 1; i < q.dimension(); ++i) bound = std::min(bound, Rational(q.matrix()(i, i)));
  std::vector<LatticeVector> candidates = short_vectors(q, bound);
  Rational minimum = bound;
  for (const auto& x : candidates) minimum = std::min(minimum, q.value(x));
  std::vector<LatticeVector> out;
  for (const auto& x : candidates) {
    if (q.value(x) == minimum) out.push_back(x);
  }
  return out;
}

LatticeVector sign_normalized(LatticeVector x) {
  for (long long v : x) {
    if (v == 0) continue;
    if (v < 0) {
      for (long long& w : x) w = -w;
    }
    break;
  }
  return x;
}

VoronoiCell voronoi_cell(const QuadraticForm& q) {
  std::vector<LatticeVector> normalized;
  for (const auto& x : minimal_vectors(q)) normalized.push_back(sign_normalized(x));
  std::sort(normalized.begin(), normalized.end(), std::greater<>());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());
  VoronoiCell cell;
  for (const auto& x : normalized) {
    IntVector v(static_cast<int>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<int>(i)) = x[i];
    cell.vectors.push_back(x);
    cell.generators.push_back(v * v.transpose());
  }
  return cell;
}

QuadraticForm torelli_point(const Graph& g, const CycleBasis& basis, const std::vector<Rational>& lengths) {
  if (!g.is_connected()) throw ValidationError("Torelli map needs a connected graph");
  if (g.total_weight() != 0) throw ValidationError("Torelli map needs vertex weights 0");
  if (static_cast<int>(lengths.size()) != g.num_edges()) throw ValidationError("one length per edge required");
  for (const Rational& l : lengths) {
    if (l <= 0) throw ValidationError("edge lengths must be positive");
  }
  const int h = basis.size();
  RationalMatrix m = RationalMatrix::Zero(h, h);
  for (int e = 0; e < g.num_edges(); ++e) {
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < h; ++j) m(i, j) += lengths[e] * basis.cycles(i, e) * basis.cycles(j, e);
    }
  }
  return QuadraticForm(m);
}

QuadraticForm torelli_point(const Graph& g, const std::vector<Rational>& lengths) {
  return torelli_point(g, cycle_basis(g), lengths);
}

LinearFeasibility solve_feasibility(const RationalMatrix& a, const RationalVector& b) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (b.size() != m) throw ValidationError("feasibility: dimension mismatch");
  const int width = n + m + 1;  // original, artificial, right-hand side
  const int rhs = n + m;
  std::vector<int> row_sign(m, 1);
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width, Rational(0)));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    row_sign[i] = b(i) < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t[i][j] = row_sign[i] * a(i, j);
    t[i][n + i] = 1;
    t[i][rhs] = row_sign[i] * b(i);
    basis[i] = n + i;
  }
  // Reduced costs of the phase-one objective (sum of artificials).
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[m][j] -= t[i][j];
    t[m][rhs] -= t[i][rhs];
  }
  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one
    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (int j = 0; j < width; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }
  LinearFeasibility out;
  const Rational objective = -t[m][rhs];
  if (objective == 0) {
    out.feasible = true;
    out.solution.assign(n, Rational(0));
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n) out.solution[basis[i]] = t[i][rhs];
    }
    return out;
  }
  // Phase-one duals y_i = 1 - (reduced cost of artificial i); -y separates.
  out.farkas.resize(m);
  for (int i = 0; i < m; ++i) out.farkas[i] = -(Rational(1) - t[m][n + i]) * row_sign[i];
  return out;
}

ConeMembership cone_membership(const QuadraticForm& x, const VoronoiCell& cell) {
  const int g = x.dimension();
  const int k = static_cast<int>(cell.generators.size());
  for (const auto& gen : cell.generators) {
    if (gen.rows() != g) throw ValidationError("cone membership: dimension mismatch");
  }
  const int rows = g * (g + 1) / 2;
  RationalMatrix a(rows, k);
  RationalVector b(rows);
  int r = 0;
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j, ++r) {
      for (int c = 0; c < k; ++c) a(r, c) = Rational(cell.generators[c](i, j));
      b(r) = x.matrix()(i, j);
    }
  }
  LinearFeasibility lp = solve_feasibility(a, b);
  ConeMembership out;
  out.member = lp.feasible;
  out.lambda = lp.solution;
  out.separator = lp.farkas;
  return out;
}

}  // namespace periodforge
