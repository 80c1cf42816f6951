#include "lbf/multipoly.hpp"

#include <algorithm>

#include "lbf/errors.hpp"

namespace lbf {

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (vars_.size() > Monomial::kMaxVars) throw StructuralError("too many variables");
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Monomial(p.nvars()), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.nvars()) throw StructuralError("variable index out of range");
  Monomial m(p.nvars());
  m.set(index, 1);
  p.add_term(m, 1);
  return p;
}

MultiPoly MultiPoly::term(std::vector<std::string> vars, const Monomial& m, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (m.size() != p.nvars()) throw StructuralError("monomial length does not match ring");
  p.add_term(m, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Monomial(nvars())); }

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars()) throw StructuralError("monomial length does not match ring");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (vars_ != other.vars_) throw StructuralError("polynomials from different rings");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(vars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= nvars()) throw StructuralError("derivative variable out of range");
  MultiPoly r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm.set(var, m[var] - 1u);
    r.add_term(dm, c * m[var]);
  }
  return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw StructuralError("point dimension does not match variable count");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars() && v != 0; ++i) {
      for (unsigned k = 0; k < m[i]; ++k) v *= point[i];
    }
    total += v;
  }
  return total;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const {
  if (var >= nvars()) throw StructuralError("substitution variable out of range");
  MultiPoly r(vars_);
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (unsigned k = 0; k < m[var]; ++k) v *= value;
    Monomial rest = m;
    rest.set(var, 0);
    r.add_term(rest, v);
  }
  return r;
}

MultiPoly MultiPoly::rename_vars(const std::vector<std::string>& names) const {
  std::vector<std::size_t> target(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto it = std::find(names.begin(), names.end(), vars_[i]);
    target[i] = it == names.end() ? names.size() : static_cast<std::size_t>(it - names.begin());
  }
  MultiPoly r(names);
  for (const auto& [m, c] : terms_) {
    Monomial nm(names.size());
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (m[i] == 0) continue;
      if (target[i] == names.size())
        throw StructuralError("variable '" + vars_[i] + "' is not available in the target ring");
      nm.set(target[i], m[i]);
    }
    r.add_term(nm, c);
  }
  return r;
}

std::string format_term(const Rational& c, const Monomial& m, std::span<const std::string> names,
                        bool leading) {
  std::string out;
  Rational mag = abs(c);
  if (c < 0) out += "-";
  else if (!leading) out += "+";
  bool one = m.is_one();
  if (one || mag != 1) {
    out += to_string(mag);
    if (!one) out += "*";
  }
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) out += "*";
    first = false;
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Highest total degree first, ties by reverse raw order; purely cosmetic.
  std::vector<const TermMap::value_type*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    if (a->first.degree() != b->first.degree()) return a->first.degree() > b->first.degree();
    return a->first > b->first;
  });
  std::string out;
  bool leading = true;
  for (const auto* t : sorted) {
    out += format_term(t->second, t->first, vars_, leading);
    leading = false;
  }
  return out;
}

Rational evaluate(const MultiPoly& f, std::span<const Rational> point) { return f.evaluate(point); }

}  // namespace lbf
