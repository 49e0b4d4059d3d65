#include "ribbon/rational.hpp"

#include "ribbon/error.hpp"

#include <cctype>

namespace ribbon {

namespace {

Integer parse_integer(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) fail(ErrorKind::ParseError, "expected integer in '" + s + "'");
  Integer z = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      fail(ErrorKind::ParseError, "bad digit in '" + s + "'");
    z = z * 10 + (s[i] - '0');
  }
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer p = parse_integer(s.substr(0, slash));
  Integer q = parse_integer(s.substr(slash + 1));
  if (q == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  return Rational(p, q);
}

std::string to_string(const Rational& r) {
  Integer p = numerator(r), q = denominator(r);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

std::string to_string(const Integer& z) { return z.str(); }

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace ribbon
