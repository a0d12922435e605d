#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hk {

// Exact rational coefficients. All engine arithmetic is exact; there is no
// floating point anywhere in the core.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

} // namespace hk
