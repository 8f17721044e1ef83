#include "periodforge/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "periodforge/error.hpp"

namespace periodforge {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ComputationError("integer overflow in polynomial arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ComputationError("integer overflow in polynomial arithmetic");
  return r;
}

Monomial Monomial::variable(int index, int power) {
  if (index < 0 || index >= kMaxVariables) throw ValidationError("variable index out of range");
  if (power < 0 || power > 255) throw ValidationError("exponent out of range");
  Monomial m;
  m.exps_[index] = static_cast<std::uint8_t>(power);
  return m;
}

Monomial Monomial::from_mask(std::uint64_t mask) {
  if (mask >> kMaxVariables) throw ValidationError("variable index out of range");
  Monomial m;
  for (int i = 0; i < kMaxVariables; ++i) m.exps_[i] = (mask >> i) & 1U;
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kMaxVariables; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::is_multilinear() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e <= 1; });
}

std::uint64_t Monomial::mask() const {
  std::uint64_t m = 0;
  for (int i = 0; i < kMaxVariables; ++i) {
    if (exps_[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVariables; ++i) {
    int e = exps_[i] + other.exps_[i];
    if (e > 255) throw ComputationError("exponent overflow");
    r.exps_[i] = static_cast<std::uint8_t>(e);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  if (!other.divides(*this)) throw ComputationError("monomial division is not exact");
  Monomial r;
  for (int i = 0; i < kMaxVariables; ++i) r.exps_[i] = exps_[i] - other.exps_[i];
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = 0; i < kMaxVariables; ++i) {
    if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Polynomial::Polynomial(std::int64_t constant) {
  if (constant != 0) terms_.push_back({Monomial(), constant});
}

Polynomial Polynomial::variable(int index) {
  return from_terms({{Monomial::variable(index), 1}});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coefficient = checked_add(merged.back().coefficient, t.coefficient);
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coefficient == 0; });
  terms_ = std::move(merged);
}

int Polynomial::degree() const { return terms_.empty() ? -1 : terms_.back().monomial.degree(); }

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || terms_.front().monomial.degree() == terms_.back().monomial.degree();
}

std::int64_t Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial < key; });
  return it != terms_.end() && it->monomial == m ? it->coefficient : 0;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (Term& t : r.terms_) t.coefficient = checked_mul(t.coefficient, -1);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->monomial < a->monomial) {
      merged.push_back(*b++);
    } else {
      std::int64_t c = checked_add(a->coefficient, b->coefficient);
      if (c != 0) merged.push_back({a->monomial, c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Polynomial::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      products.push_back({s.monomial * t.monomial, checked_mul(s.coefficient, t.coefficient)});
    }
  }
  return Polynomial::from_terms(std::move(products));
}

Polynomial Polynomial::derivative(int index) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    int e = t.monomial.exponent(index);
    if (e == 0) continue;
    out.push_back({t.monomial / Monomial::variable(index), checked_mul(t.coefficient, e)});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::power(int n) const {
  Polynomial result(1);
  for (int i = 0; i < n; ++i) result = result * *this;
  return result;
}

Polynomial Polynomial::substitute_zero(int index) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.monomial.exponent(index) == 0) out.push_back(t);
  }
  return from_terms(std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::int64_t c = it->coefficient;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::uint64_t mag = c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
    bool constant = it->monomial.is_one();
    if (mag != 1 || constant) {
      os << mag;
      if (!constant) os << '*';
    }
    bool first_var = true;
    for (int i = 0; i < kMaxVariables; ++i) {
      int e = it->monomial.exponent(i);
      if (e == 0) continue;
      if (!first_var) os << '*';
      first_var = false;
      os << 'x' << i + 1;
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divide_with_remainder(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw ComputationError("division by the zero polynomial");
  const auto& lead = divisor.terms().back();
  std::vector<Polynomial::Term> quotient;
  std::vector<Polynomial::Term> remainder;
  Polynomial rest = dividend;
  while (!rest.is_zero()) {
    const auto top = rest.terms().back();
    if (lead.monomial.divides(top.monomial) && top.coefficient % lead.coefficient == 0) {
      Polynomial::Term q{top.monomial / lead.monomial, top.coefficient / lead.coefficient};
      quotient.push_back(q);
      rest -= divisor * Polynomial::from_terms({q});
    } else {
      remainder.push_back(top);
      rest -= Polynomial::from_terms({top});
    }
  }
  return {Polynomial::from_terms(std::move(quotient)), Polynomial::from_terms(std::move(remainder))};
}

Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  auto [q, r] = divide_with_remainder(dividend, divisor);
  if (!r.is_zero()) throw ComputationError("polynomial division is not exact");
  return q;
}

MultilinearPoly MultilinearPoly::one() { return from_terms({{0, 1}}); }

MultilinearPoly MultilinearPoly::from_terms(std::map<std::uint64_t, std::int64_t> terms) {
  MultilinearPoly p;
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  p.terms_ = std::move(terms);
  return p;
}

std::int64_t MultilinearPoly::coefficient(std::uint64_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? 0 : it->second;
}

bool MultilinearPoly::is_homogeneous_of_degree(int d) const {
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& kv) { return std::popcount(kv.first) == d; });
}

MultilinearPoly& MultilinearPoly::operator+=(const MultilinearPoly& other) {
  for (const auto& [mask, c] : other.terms_) {
    std::int64_t sum = checked_add(coefficient(mask), c);
    if (sum == 0) {
      terms_.erase(mask);
    } else {
      terms_[mask] = sum;
    }
  }
  return *this;
}

MultilinearPoly MultilinearPoly::times_variable(int index) const {
  const std::uint64_t bit = std::uint64_t{1} << index;
  MultilinearPoly r;
  for (const auto& [mask, c] : terms_) {
    if (mask & bit) throw ComputationError("product is not multilinear");
    r.terms_[mask | bit] = c;
  }
  return r;
}

MultilinearPoly MultilinearPoly::substitute_zero(int index) const {
  const std::uint64_t bit = std::uint64_t{1} << index;
  MultilinearPoly r;
  for (const auto& [mask, c] : terms_) {
    if (!(mask & bit)) r.terms_[mask] = c;
  }
  return r;
}

MultilinearPoly MultilinearPoly::rename(std::span<const int> map) const {
  MultilinearPoly r;
  for (const auto& [mask, c] : terms_) {
    std::uint64_t renamed = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      renamed |= std::uint64_t{1} << map[std::countr_zero(m)];
    }
    r.terms_[renamed] = checked_add(r.coefficient(renamed), c);
  }
  return r;
}

double MultilinearPoly::evaluate(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& [mask, c] : terms_) {
    double v = static_cast<double>(c);
    for (std::uint64_t m = mask; m; m &= m - 1) v *= point[std::countr_zero(m)];
    total += v;
  }
  return total;
}

Polynomial MultilinearPoly::to_polynomial() const {
  std::vector<Polynomial::Term> terms;
  for (const auto& [mask, c] : terms_) terms.push_back({Monomial::from_mask(mask), c});
  return Polynomial::from_terms(std::move(terms));
}

MultilinearPoly MultilinearPoly::from_polynomial(const Polynomial& p) {
  MultilinearPoly r;
  for (const auto& t : p.terms()) {
    if (!t.monomial.is_multilinear()) throw ComputationError("polynomial is not multilinear");
    r.terms_[t.monomial.mask()] = t.coefficient;
  }
  return r;
}

namespace {

std::vector<int> variables_of(std::uint64_t mask) {
  std::vector<int> vars;
  for (std::uint64_t m = mask; m; m &= m - 1) vars.push_back(std::countr_zero(m));
  return vars;
}

}  // namespace

std::vector<std::pair<std::uint64_t, std::int64_t>> MultilinearPoly::ordered_terms() const {
  std::vector<std::pair<std::uint64_t, std::int64_t>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return variables_of(a.first) < variables_of(b.first); });
  return out;
}

std::string MultilinearPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, c] : ordered_terms()) {
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::int64_t mag = c < 0 ? -c : c;
    std::vector<int> vars = variables_of(mask);
    if (mag != 1 || vars.empty()) {
      os << mag;
      if (!vars.empty()) os << '*';
    }
    for (std::size_t k = 0; k < vars.size(); ++k) os << (k ? "*" : "") << 'x' << vars[k] + 1;
  }
  return os.str();
}

nlohmann::json MultilinearPoly::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [mask, c] : ordered_terms()) {
    std::vector<int> ids;
    for (int v : variables_of(mask)) ids.push_back(v + 1);
    out.push_back(nlohmann::json::array({c, ids}));
  }
  return out;
}

}  // namespace periodforge
