#pragma once

#include <cstdint>
#include <vector>

#include "periodforge/rational.hpp"

namespace periodforge {

// Sparse matrix over Q stored by columns.
struct SparseColumn {
  std::vector<std::pair<int, Rational>> entries;  // (row, value), rows ascending
};

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseColumn> columns;
};

SparseMatrix to_sparse(const RationalMatrix& dense);
RationalMatrix to_dense(const SparseMatrix& sparse);
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
bool is_zero(const SparseMatrix& m);

// Exact rank over Q by Gaussian elimination with Markowitz pivoting.
int exact_rank(const SparseMatrix& m);
int exact_rank(const RationalMatrix& m);

// Rank modulo p = 2^31 - 1 (entries must have denominators prime to p).
int modular_rank(const SparseMatrix& m, std::uint32_t p = 2147483647U);

}  // namespace periodforge
