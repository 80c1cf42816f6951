#include "lbf/rational.hpp"

#include <cctype>

#include "lbf/errors.hpp"

namespace lbf {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t p = start;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p == start) throw ParseError("expected digits", start);
    return p;
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t end = digits(pos);
  Integer num(std::string(text.substr(pos, end - pos)));
  Integer den = 1;
  pos = end;
  if (pos < text.size() && text[pos] == '/') {
    end = digits(pos + 1);
    den = Integer(std::string(text.substr(pos + 1, end - pos - 1)));
    if (den == 0) throw ParseError("zero denominator", pos + 1);
    pos = end;
  }
  if (pos != text.size()) throw ParseError("trailing characters in rational", pos);
  if (negative) num = -num;
  return make_rational(num, den);
}

bool fits_int64(const Rational& r) {
  return r.get_num().fits_slong_p() && r.get_den().fits_slong_p();
}

}  // namespace lbf
