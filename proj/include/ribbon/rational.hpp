#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ribbon {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" or "p"; throws ParseError otherwise
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Integer factorial(int n);

}  // namespace ribbon
