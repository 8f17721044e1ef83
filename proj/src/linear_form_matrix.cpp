#include "periodforge/linear_form_matrix.hpp"

#include <sstream>

#include "periodforge/error.hpp"

namespace periodforge {

LinearFormMatrix::LinearFormMatrix(int size, int num_variables)
    : size_(size), constant_(IntMatrix::Zero(size, size)), coefficients_(num_variables, IntMatrix::Zero(size, size)) {
  if (size < 0 || num_variables < 0) throw ValidationError("negative matrix dimension");
  if (num_variables > kMaxVariables) throw ValidationError("too many variables");
}

bool LinearFormMatrix::is_symmetric() const {
  if (constant_ != constant_.transpose()) return false;
  for (const auto& a : coefficients_) {
    if (a != a.transpose()) return false;
  }
  return true;
}

Polynomial LinearFormMatrix::entry(int i, int j) const {
  std::vector<Polynomial::Term> terms;
  if (constant_(i, j) != 0) terms.push_back({Monomial(), constant_(i, j)});
  for (int v = 0; v < num_variables(); ++v) {
    if (coefficients_[v](i, j) != 0) terms.push_back({Monomial::variable(v), coefficients_[v](i, j)});
  }
  return Polynomial::from_terms(std::move(terms));
}

LinearFormMatrix LinearFormMatrix::transpose() const {
  LinearFormMatrix t(size_, num_variables());
  t.constant_ = constant_.transpose();
  for (int v = 0; v < num_variables(); ++v) t.coefficients_[v] = coefficients_[v].transpose();
  return t;
}

LinearFormMatrix LinearFormMatrix::congruence(const IntMatrix& p) const {
  if (p.rows() != size_) throw ValidationError("congruence: dimension mismatch");
  LinearFormMatrix t(static_cast<int>(p.cols()), num_variables());
  t.constant_ = p.transpose() * constant_ * p;
  for (int v = 0; v < num_variables(); ++v) t.coefficients_[v] = p.transpose() * coefficients_[v] * p;
  return t;
}

std::string LinearFormMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < size_; ++i) {
    os << '[';
    for (int j = 0; j < size_; ++j) os << (j ? ", " : "") << entry(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

LinearFormMatrix LinearFormMatrix::generic(int m) {
  LinearFormMatrix x(m, m * m);
  int var = 0;
  for (int i = 0; i < m; ++i) x.coefficients_[var++](i, i) = 1;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) x.coefficients_[var++](i, j) = 1;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) x.coefficients_[var++](i, j) = 1;
  }
  return x;
}

LinearFormMatrix LinearFormMatrix::generic_symmetric(int m) {
  LinearFormMatrix x(m, m * (m + 1) / 2);
  int var = 0;
  for (int i = 0; i < m; ++i) x.coefficients_[var++](i, i) = 1;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      x.coefficients_[var](i, j) = 1;
      x.coefficients_[var++](j, i) = 1;
    }
  }
  return x;
}

Polynomial det_poly(const std::vector<Polynomial>& entries, int size) {
  if (static_cast<int>(entries.size()) != size * size) throw ValidationError("det_poly: entry count mismatch");
  if (size == 0) return Polynomial(1);
  std::vector<Polynomial> a = entries;
  auto at = [&](int i, int j) -> Polynomial& { return a[i * size + j]; };
  Polynomial previous(1);
  int sign = 1;
  for (int k = 0; k + 1 < size; ++k) {
    if (at(k, k).is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < size; ++i) {
        if (!at(i, k).is_zero()) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return Polynomial();
      for (int j = 0; j < size; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        at(i, j) = divide_exact(at(k, k) * at(i, j) - at(i, k) * at(k, j), previous);
      }
    }
    previous = at(k, k);
  }
  Polynomial det = at(size - 1, size - 1);
  return sign < 0 ? -det : det;
}

Polynomial det_poly(const LinearFormMatrix& m) {
  std::vector<Polynomial> entries;
  entries.reserve(m.size() * m.size());
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) entries.push_back(m.entry(i, j));
  }
  return det_poly(entries, m.size());
}

std::vector<Polynomial> adjugate(const std::vector<Polynomial>& entries, int size) {
  std::vector<Polynomial> adj(size * size);
  if (size == 1) {
    adj[0] = Polynomial(1);
    return adj;
  }
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      std::vector<Polynomial> minor;
      minor.reserve((size - 1) * (size - 1));
      for (int r = 0; r < size; ++r) {
        if (r == i) continue;
        for (int c = 0; c < size; ++c) {
          if (c != j) minor.push_back(entries[r * size + c]);
        }
      }
      Polynomial cof = det_poly(minor, size - 1);
      // adj(X)_{ji} = (-1)^{i+j} M_{ij}
      adj[j * size + i] = (i + j) % 2 ? -cof : cof;
    }
  }
  return adj;
}

}  // namespace periodforge
