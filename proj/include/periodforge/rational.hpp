#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace periodforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<long long>;
using IntVector = Vector<long long>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

// Accepts "p", "-p/q" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

}  // namespace periodforge
