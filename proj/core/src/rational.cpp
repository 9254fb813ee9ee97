#include "conecalc/rational.hpp"

#include <cstdlib>

#include "conecalc/error.hpp"

namespace conecalc {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&text](const std::string& part) {
    char* end = nullptr;
    const long long v = std::strtoll(part.c_str(), &end, 10);
    if (part.empty() || *end != '\0') {
      throw Error(ErrorCode::kParse, "bad rational '" + text + "'");
    }
    return v;
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  const long long den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::kParse, "zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace conecalc
