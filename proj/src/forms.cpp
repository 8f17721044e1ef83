#include "periodforge/forms.hpp"

#include <bit>
#include <sstream>

#include "periodforge/error.hpp"

namespace periodforge {

namespace {

using FormEntry = std::map<WedgeMask, Polynomial>;

void accumulate(FormEntry& into, WedgeMask mask, const Polynomial& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = into.try_emplace(mask, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) into.erase(it);
  }
}

FormEntry wedge_entries(const FormEntry& a, const FormEntry& b) {
  FormEntry out;
  for (const auto& [ma, pa] : a) {
    for (const auto& [mb, pb] : b) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Polynomial prod = pa * pb;
      accumulate(out, ma | mb, s > 0 ? prod : -prod);
    }
  }
  return out;
}

// Product of square matrices of forms.
std::vector<FormEntry> multiply(const std::vector<FormEntry>& a, const std::vector<FormEntry>& b, int m) {
  std::vector<FormEntry> out(m * m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      if (a[i * m + k].empty()) continue;
      for (int j = 0; j < m; ++j) {
        if (b[k * m + j].empty()) continue;
        for (const auto& [mask, p] : wedge_entries(a[i * m + k], b[k * m + j])) accumulate(out[i * m + j], mask, p);
      }
    }
  }
  return out;
}

}  // namespace

int wedge_sign(WedgeMask a, WedgeMask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (WedgeMask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return swaps % 2 ? -1 : 1;
}

RationalForm::RationalForm(int num_variables, int degree, Polynomial base, int power,
                           std::map<WedgeMask, Polynomial> numerator)
    : num_variables_(num_variables), degree_(degree), base_(std::move(base)), power_(power),
      numerator_(std::move(numerator)) {
  std::erase_if(numerator_, [](const auto& kv) { return kv.second.is_zero(); });
  for (const auto& [mask, p] : numerator_) {
    if (std::popcount(mask) != degree_) throw ValidationError("wedge monomial degree mismatch");
  }
  if (numerator_.empty()) power_ = 0;
}

void RationalForm::reduce() {
  if (numerator_.empty()) {
    power_ = 0;
    return;
  }
  while (power_ > 0) {
    std::map<WedgeMask, Polynomial> divided;
    for (const auto& [mask, p] : numerator_) {
      auto [q, r] = divide_with_remainder(p, base_);
      if (!r.is_zero()) return;
      divided.emplace(mask, std::move(q));
    }
    numerator_ = std::move(divided);
    --power_;
  }
}

RationalForm RationalForm::exterior_derivative() const {
  FormEntry out;
  FormEntry d_base;
  for (int v = 0; v < num_variables_; ++v) accumulate(d_base, WedgeMask{1} << v, base_.derivative(v));
  for (const auto& [mask, p] : numerator_) {
    for (int v = 0; v < num_variables_; ++v) {
      WedgeMask dv = WedgeMask{1} << v;
      int s = wedge_sign(dv, mask);
      if (s == 0) continue;
      Polynomial term = base_ * p.derivative(v);
      accumulate(out, dv | mask, s > 0 ? term : -term);
    }
  }
  if (power_ != 0) {
    for (const auto& [mask, p] : wedge_entries(d_base, numerator_)) {
      accumulate(out, mask, -(Polynomial(power_) * p));
    }
  }
  return RationalForm(num_variables_, degree_ + 1, base_, power_ + 1, std::move(out));
}

RationalForm RationalForm::scaled(std::int64_t factor) const {
  std::map<WedgeMask, Polynomial> out;
  for (const auto& [mask, p] : numerator_) out.emplace(mask, Polynomial(factor) * p);
  return RationalForm(num_variables_, degree_, base_, power_, std::move(out));
}

namespace {

std::string wedge_name(WedgeMask mask) {
  std::string s;
  for (WedgeMask m = mask; m; m &= m - 1) {
    if (!s.empty()) s += "^";
    s += "dx" + std::to_string(std::countr_zero(m) + 1);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

std::string RationalForm::to_string() const {
  std::ostringstream os;
  os << "degree " << degree_ << ", denominator (" << base_.to_string() << ")^" << power_ << '\n';
  for (const auto& [mask, p] : numerator_) os << "  " << wedge_name(mask) << ": " << p.to_string() << '\n';
  return os.str();
}

nlohmann::json RationalForm::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, p] : numerator_) {
    std::vector<int> ids;
    for (WedgeMask m = mask; m; m &= m - 1) ids.push_back(std::countr_zero(m) + 1);
    terms.push_back({{"wedge", ids}, {"numerator", p.to_string()}});
  }
  return {{"degree", degree_}, {"denominator", base_.to_string()}, {"power", power_}, {"terms", terms}};
}

RationalForm canonical_form_symbolic(const LinearFormMatrix& x, int n) {
  const int m = x.size();
  const int vars = x.num_variables();
  if (n < 1) throw ValidationError("form degree must be positive");
  if (vars > 32) throw ValidationError("too many variables for wedge masks");
  std::vector<Polynomial> entries;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) entries.push_back(x.entry(i, j));
  }
  Polynomial det = det_poly(entries, m);
  if (det.is_zero()) throw ValidationError("determinant is identically zero");
  std::vector<Polynomial> adj = adjugate(entries, m);
  // adj(X) dX as a matrix of 1-forms.
  std::vector<FormEntry> one_form(m * m);
  for (int v = 0; v < vars; ++v) {
    const IntMatrix& a = x.coefficient(v);
    if (a.isZero()) continue;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Polynomial p;
        for (int k = 0; k < m; ++k) {
          if (a(k, j) != 0) p += adj[i * m + k] * Polynomial(a(k, j));
        }
        accumulate(one_form[i * m + j], WedgeMask{1} << v, p);
      }
    }
  }
  std::vector<FormEntry> power = one_form;
  for (int k = 1; k < n; ++k) power = multiply(power, one_form, m);
  FormEntry trace;
  for (int i = 0; i < m; ++i) {
    for (const auto& [mask, p] : power[i * m + i]) accumulate(trace, mask, p);
  }
  RationalForm form(vars, n, det, n, std::move(trace));
  form.reduce();
  return form;
}

RationalForm wedge(const RationalForm& a, const RationalForm& b) {
  if (a.num_variables() != b.num_variables()) throw ValidationError("wedge: variable-set mismatch");
  Polynomial base = a.is_zero() ? b.base() : a.base();
  if (!a.is_zero() && !b.is_zero() && !(a.base() == b.base())) throw ValidationError("wedge: denominators differ");
  RationalForm out(a.num_variables(), a.degree() + b.degree(), base, a.power() + b.power(),
                   wedge_entries(a.numerator(), b.numerator()));
  out.reduce();
  return out;
}

std::map<WedgeMask, Polynomial> projective_volume_numerator(int num_variables) {
  std::map<WedgeMask, Polynomial> out;
  const WedgeMask all = (WedgeMask{1} << num_variables) - 1;
  for (int i = 0; i < num_variables; ++i) {
    Polynomial xi = Polynomial::variable(i);
    out.emplace(all & ~(WedgeMask{1} << i), (i + 1) % 2 ? -xi : xi);
  }
  return out;
}

}  // namespace periodforge
