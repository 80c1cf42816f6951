#include "lbf/parse.hpp"

#include <algorithm>
#include <cctype>

#include "lbf/errors.hpp"

namespace lbf {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  MultiPoly run() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    MultiPoly p = expr();
    skip();
    if (pos_ != text_.size()) unexpected();
    return p;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void unexpected() {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (ident_start(c) || digit(c) || c == '(') throw ParseError("missing operator (implicit multiplication)", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  MultiPoly expr() {
    MultiPoly acc(vars_);
    bool first = true;
    while (true) {
      char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        negate = (c == '-');
        ++pos_;
      } else if (!first) {
        break;
      }
      MultiPoly t = term();
      if (negate) acc -= t;
      else acc += t;
      first = false;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly b = base();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      if (pos_ >= text_.size() || !digit(text_[pos_])) throw ParseError("expected exponent", pos_);
      unsigned long e = 0;
      while (pos_ < text_.size() && digit(text_[pos_])) {
        e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (e > 65535) throw ParseError("exponent too large", start);
        ++pos_;
      }
      b = b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  MultiPoly base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (peek() != ')') {
        if (pos_ >= text_.size()) throw ParseError("missing ')'", pos_);
        unexpected();
      }
      ++pos_;
      return inner;
    }
    if (digit(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
      std::size_t save = pos_;
      skip();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip();
        if (pos_ >= text_.size() || !digit(text_[pos_])) throw ParseError("expected denominator", pos_);
        std::size_t dstart = pos_;
        while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
        Integer num(std::string(text_.substr(start, save - start)));
        Integer den(std::string(text_.substr(dstart, pos_ - dstart)));
        if (den == 0) throw ParseError("zero denominator", dstart);
        return MultiPoly::constant(vars_, make_rational(num, den));
      }
      pos_ = save;
      return MultiPoly::constant(vars_, Rational(Integer(std::string(text_.substr(start, save - start)))));
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) throw ParseError("unknown identifier '" + name + "'", start);
      return MultiPoly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    unexpected();
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  if (vars.empty()) throw PreconditionError("parse_poly: no variables declared");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw PreconditionError("parse_poly: duplicate variable '" + vars[i] + "'");
  return Parser(text, vars).run();
}

std::vector<std::string> parse_var_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view piece = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    std::size_t a = 0, b = piece.size();
    while (a < b && std::isspace(static_cast<unsigned char>(piece[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(piece[b - 1]))) --b;
    std::string name(piece.substr(a, b - a));
    if (name.empty() || !ident_start(name[0]) || !std::all_of(name.begin(), name.end(), ident_char))
      throw ParseError("invalid variable name", pos + a);
    if (std::find(out.begin(), out.end(), name) != out.end())
      throw ParseError("duplicate variable '" + name + "'", pos + a);
    out.push_back(name);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace lbf
