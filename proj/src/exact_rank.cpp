#include "periodforge/exact_rank.hpp"

#include <algorithm>
#include <limits>

#include "periodforge/error.hpp"

namespace periodforge {

namespace {

struct RationalField {
  using Value = Rational;
  static bool is_zero(const Value& v) { return v == 0; }
  static Value sub_mul(const Value& a, const Value& factor, const Value& b) { return a - factor * b; }
  static Value div(const Value& a, const Value& b) { return a / b; }
};

struct ModularField {
  using Value = std::uint64_t;
  std::uint64_t p;
  bool is_zero(Value v) const { return v == 0; }
  Value sub_mul(Value a, Value factor, Value b) const { return (a + p - (factor * b) % p) % p; }
  Value inverse(Value a) const {
    Value result = 1, base = a % p;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
    }
    return result;
  }
  Value div(Value a, Value b) const { return a * inverse(b) % p; }
};

template <typename Field>
using Row = std::vector<std::pair<int, typename Field::Value>>;

// Gaussian elimination choosing the sparsest row, then within it the entry
// whose column is sparsest (Markowitz-style fill control).
template <typename Field>
int eliminate(std::vector<Row<Field>> rows, int cols, const Field& field) {
  using Value = typename Field::Value;
  int rank = 0;
  std::vector<char> active(rows.size(), 1);
  std::vector<int> col_count(cols, 0);
  while (true) {
    std::fill(col_count.begin(), col_count.end(), 0);
    int pivot_row = -1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r]) continue;
      if (rows[r].empty()) {
        active[r] = 0;
        continue;
      }
      for (const auto& [c, v] : rows[r]) ++col_count[c];
      if (pivot_row < 0 || rows[r].size() < rows[pivot_row].size()) pivot_row = static_cast<int>(r);
    }
    if (pivot_row < 0) break;
    const Row<Field> pivot = rows[pivot_row];
    active[pivot_row] = 0;
    ++rank;
    std::size_t best = 0;
    for (std::size_t k = 1; k < pivot.size(); ++k) {
      if (col_count[pivot[k].first] < col_count[pivot[best].first]) best = k;
    }
    const int pc = pivot[best].first;
    const Value pv = pivot[best].second;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r]) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), pc,
                                 [](const auto& entry, int c) { return entry.first < c; });
      if (it == rows[r].end() || it->first != pc) continue;
      const Value factor = field.div(it->second, pv);
      Row<Field> merged;
      merged.reserve(rows[r].size() + pivot.size());
      auto a = rows[r].begin();
      auto b = pivot.begin();
      while (a != rows[r].end() || b != pivot.end()) {
        if (b == pivot.end() || (a != rows[r].end() && a->first < b->first)) {
          merged.push_back(*a++);
        } else if (a == rows[r].end() || b->first < a->first) {
          Value v = field.sub_mul(Value(0), factor, b->second);
          if (!field.is_zero(v)) merged.emplace_back(b->first, v);
          ++b;
        } else {
          Value v = field.sub_mul(a->second, factor, b->second);
          if (!field.is_zero(v) && a->first != pc) merged.emplace_back(a->first, v);
          ++a;
          ++b;
        }
      }
      rows[r] = std::move(merged);
    }
  }
  return rank;
}

std::vector<Row<RationalField>> rational_rows(const SparseMatrix& m) {
  std::vector<Row<RationalField>> rows(m.rows);
  for (int c = 0; c < m.cols; ++c) {
    for (const auto& [r, v] : m.columns[c].entries) rows[r].emplace_back(c, v);
  }
  return rows;
}

}  // namespace

SparseMatrix to_sparse(const RationalMatrix& dense) {
  SparseMatrix m;
  m.rows = static_cast<int>(dense.rows());
  m.cols = static_cast<int>(dense.cols());
  m.columns.resize(m.cols);
  for (int c = 0; c < m.cols; ++c) {
    for (int r = 0; r < m.rows; ++r) {
      if (dense(r, c) != 0) m.columns[c].entries.emplace_back(r, dense(r, c));
    }
  }
  return m;
}

RationalMatrix to_dense(const SparseMatrix& sparse) {
  RationalMatrix d = RationalMatrix::Zero(sparse.rows, sparse.cols);
  for (int c = 0; c < sparse.cols; ++c) {
    for (const auto& [r, v] : sparse.columns[c].entries) d(r, c) = v;
  }
  return d;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw ValidationError("sparse multiply: dimension mismatch");
  SparseMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  out.columns.resize(b.cols);
  for (int c = 0; c < b.cols; ++c) {
    std::vector<std::pair<int, Rational>> acc;
    for (const auto& [k, bv] : b.columns[c].entries) {
      for (const auto& [r, av] : a.columns[k].entries) acc.emplace_back(r, av * bv);
    }
    std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [r, v] : acc) {
      if (!out.columns[c].entries.empty() && out.columns[c].entries.back().first == r) {
        out.columns[c].entries.back().second += v;
      } else {
        out.columns[c].entries.emplace_back(r, v);
      }
    }
    std::erase_if(out.columns[c].entries, [](const auto& e) { return e.second == 0; });
  }
  return out;
}

bool is_zero(const SparseMatrix& m) {
  return std::all_of(m.columns.begin(), m.columns.end(), [](const SparseColumn& c) { return c.entries.empty(); });
}

int exact_rank(const SparseMatrix& m) { return eliminate(rational_rows(m), m.cols, RationalField{}); }

int exact_rank(const RationalMatrix& m) { return exact_rank(to_sparse(m)); }

int modular_rank(const SparseMatrix& m, std::uint32_t p) {
  ModularField field{p};
  std::vector<Row<ModularField>> rows(m.rows);
  for (int c = 0; c < m.cols; ++c) {
    for (const auto& [r, v] : m.columns[c].entries) {
      BigInt num = numerator(v) % p;
      if (num < 0) num += p;
      BigInt den = denominator(v) % p;
      if (den == 0) throw ComputationError("modular rank: denominator divisible by the modulus");
      std::uint64_t value = field.div(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den));
      if (value != 0) rows[r].emplace_back(c, value);
    }
  }
  return eliminate(std::move(rows), m.cols, field);
}

}  // namespace periodforge
