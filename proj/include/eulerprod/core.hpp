#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace eulerprod {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

// Column alpha_{.j} of the exponent matrix; length n+1.
using ExponentVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using ExponentMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXc = Eigen::VectorXcd;
using VectorXr = Eigen::VectorXd;
using RationalVector = std::vector<Rational>;

// Multi-index beta in N^r, or a monomial exponent in N^{n+1} for series work.
using MultiIndex = std::vector<int>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace eulerprod
