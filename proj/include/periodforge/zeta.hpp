#pragma once

#include <string>

#include "periodforge/rational.hpp"

namespace periodforge {

// Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(int n);

HighPrecision pi_value();

// Riemann zeta at an integer s >= 2 by Euler-Maclaurin.
HighPrecision zeta(int s);

// sum_{n >= start} n^-s for integer s >= 2 and start >= 1.
HighPrecision zeta_tail(int s, long start);

// Double zeta with the convention sum_{m > n >= 1} m^-a n^-b (a >= 2, b >= 1).
HighPrecision zeta2(int a, int b);

// Evaluates target expressions such as "6*zeta(3)" or "9!/16*zeta2(5,3)".
// Grammar: decimal numbers, + - * / ^, postfix !, parentheses, pi, zeta(s),
// zeta2(a,b).
HighPrecision evaluate_expression(const std::string& text);

std::string to_string(const HighPrecision& x, int digits = 30);

}  // namespace periodforge
