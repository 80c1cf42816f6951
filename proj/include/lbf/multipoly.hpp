#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lbf/monomial.hpp"
#include "lbf/rational.hpp"

namespace lbf {

/// Commutative polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, const Rational& c);
  static MultiPoly variable(std::vector<std::string> vars, std::size_t index);
  static MultiPoly term(std::vector<std::string> vars, const Monomial& m, const Rational& c);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  unsigned total_degree() const;

  /// Adds c * m to the polynomial.
  void add_term(const Monomial& m, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned e) const;
  MultiPoly derivative(std::size_t var) const;

  /// Exact value at `point`; throws StructuralError on length mismatch.
  Rational evaluate(std::span<const Rational> point) const;

  /// Replaces variable `var` by `value`; the variable slot is kept.
  MultiPoly substitute(std::size_t var, const Rational& value) const;

  /// Re-expresses the polynomial over `names`. Every variable that occurs
  /// with a nonzero exponent must be present in `names`.
  MultiPoly rename_vars(const std::vector<std::string>& names) const;

  /// Human-readable form in the CLI grammar, e.g. "x^3+2*x*y-1/2".
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& other) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Exact substitution (free-function form of MultiPoly::evaluate).
Rational evaluate(const MultiPoly& f, std::span<const Rational> point);

/// Formats c * m with variable names, using '*' and '^'.
std::string format_term(const Rational& c, const Monomial& m, std::span<const std::string> names,
                        bool leading);

}  // namespace lbf
