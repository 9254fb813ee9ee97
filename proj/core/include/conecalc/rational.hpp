#pragma once

#include <string>

#include <boost/rational.hpp>

namespace conecalc {

using Rational = boost::rational<long long>;

// "p" or "p/q".
std::string to_string(const Rational& r);
// Inverse of to_string; throws kParse.
Rational parse_rational(const std::string& text);

}  // namespace conecalc
