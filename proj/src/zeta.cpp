#include "periodforge/zeta.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "periodforge/error.hpp"

namespace periodforge {

namespace {

constexpr long kDirectTerms = 40;
constexpr int kBernoulliTerms = 40;

HighPrecision to_high(const Rational& r) {
  return HighPrecision(numerator(r)) / HighPrecision(denominator(r));
}

// sum_{n >= start} n^-s via Euler-Maclaurin at `start` (start large).
HighPrecision euler_maclaurin_tail(int s, long start) {
  const HighPrecision n(start);
  HighPrecision total = pow(n, 1 - s) / (s - 1) + pow(n, -s) / 2;
  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * n^{-s-2k+1}
  HighPrecision rising = s;  // (s)_{2k-1}
  HighPrecision factorial = 2;
  for (int k = 1; k <= kBernoulliTerms; ++k) {
    HighPrecision term = to_high(bernoulli(2 * k)) / factorial * rising * pow(n, -s - 2 * k + 1);
    total += term;
    rising *= HighPrecision(s + 2 * k - 1) * (s + 2 * k);
    factorial *= HighPrecision(2 * k + 1) * (2 * k + 2);
  }
  return total;
}

}  // namespace

Rational bernoulli(int n) {
  static std::mutex mutex;
  static std::vector<Rational> cache{Rational(1)};
  if (n < 0) throw ValidationError("Bernoulli index must be nonnegative");
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    Rational sum = 0;
    BigInt binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      sum += Rational(binom) * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    cache.push_back(-sum / (m + 1));
  }
  return cache[n];
}

HighPrecision pi_value() { return boost::math::constants::pi<HighPrecision>(); }

HighPrecision zeta_tail(int s, long start) {
  if (s < 2) throw ValidationError("zeta needs s >= 2");
  if (start < 1) throw ValidationError("zeta tail needs start >= 1");
  HighPrecision total = 0;
  long n = start;
  for (; n < kDirectTerms; ++n) total += pow(HighPrecision(n), -s);
  return total + euler_maclaurin_tail(s, n);
}

HighPrecision zeta(int s) {
  static std::mutex mutex;
  static std::map<int, HighPrecision> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, zeta_tail(s, 1)).first;
  return it->second;
}

// sum_{n >= 1} n^-b T_a(n+1) with T_a(n+1) = sum_{m > n} m^-a. Terms beyond
// `cutoff` use the asymptotic expansion of T_a(n+1) in powers of 1/n, each of
// which sums to a Hurwitz tail.
HighPrecision zeta2(int a, int b) {
  if (a < 2 || b < 1) throw ValidationError("zeta2 needs a >= 2 and b >= 1");
  constexpr long kCutoff = 200;
  HighPrecision head = 0;
  HighPrecision inner = zeta_tail(a, 2);  // T_a(n+1) at n = 1
  for (long n = 1; n <= kCutoff; ++n) {
    head += pow(HighPrecision(n), -b) * inner;
    inner -= pow(HighPrecision(n + 1), -a);
  }
  const long start = kCutoff + 1;
  HighPrecision tail = zeta_tail(a + b - 1, start) / (a - 1) - zeta_tail(a + b, start) / 2;
  HighPrecision rising = a;
  HighPrecision factorial = 2;
  for (int k = 1; k <= 20; ++k) {
    tail += to_high(bernoulli(2 * k)) / factorial * rising * zeta_tail(a + b + 2 * k - 1, start);
    rising *= HighPrecision(a + 2 * k - 1) * (a + 2 * k);
    factorial *= HighPrecision(2 * k + 1) * (2 * k + 2);
  }
  return head + tail;
}

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : text_(text) {}

  HighPrecision parse() {
    HighPrecision v = expression();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("target expression '" + text_ + "': " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  HighPrecision expression() {
    HighPrecision v = term();
    while (true) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  HighPrecision term() {
    HighPrecision v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        HighPrecision d = unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  HighPrecision unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  HighPrecision power() {
    HighPrecision base = postfix();
    if (!accept('^')) return base;
    HighPrecision exponent = unary();
    if (exponent == floor(exponent) && abs(exponent) < 1000) {
      return pow(base, exponent.convert_to<int>());
    }
    return pow(base, exponent);
  }

  HighPrecision postfix() {
    HighPrecision v = primary();
    while (accept('!')) v = factorial(v);
    return v;
  }

  HighPrecision factorial(const HighPrecision& v) {
    int n = integer_argument(v, "factorial");
    if (n < 0 || n > 170) fail("factorial argument out of range");
    HighPrecision r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
  }

  int integer_argument(const HighPrecision& v, const char* what) {
    if (v != floor(v) || abs(v) > 100000) fail(std::string(what) + " needs an integer argument");
    return v.convert_to<int>();
  }

  HighPrecision primary() {
    skip();
    if (accept('(')) {
      HighPrecision v = expression();
      expect(')');
      return v;
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      return to_high(parse_rational(text_.substr(start, pos_ - start)));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name = text_.substr(start, pos_ - start);
    if (name == "pi") return pi_value();
    if (name == "zeta") {
      expect('(');
      int s = integer_argument(expression(), "zeta");
      expect(')');
      if (s < 2) fail("zeta needs s >= 2");
      return zeta(s);
    }
    if (name == "zeta2") {
      expect('(');
      int a = integer_argument(expression(), "zeta2");
      expect(',');
      int b = integer_argument(expression(), "zeta2");
      expect(')');
      if (a < 2 || b < 1) fail("zeta2 needs a >= 2 and b >= 1");
      return zeta2(a, b);
    }
    fail(name.empty() ? "expected a value" : "unknown name '" + name + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

HighPrecision evaluate_expression(const std::string& text) { return ExpressionParser(text).parse(); }

std::string to_string(const HighPrecision& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace periodforge
