#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace homoclinic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace homoclinic
