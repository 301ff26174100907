#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ksw {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", integers and plain decimals such as "-1.25".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace ksw
