#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lbf/rational.hpp"

namespace lbf {

/// Univariate polynomial over Q, coefficients by ascending degree. The
/// leading coefficient is nonzero unless the polynomial is zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);

  /// c * t^k
  static UniPoly monomial(unsigned k, const Rational& c = 1);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }
  Rational coefficient(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  Rational evaluate(const Rational& t) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Rational& c);
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; throws ArithmeticError when
/// b is zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

/// a / b, throwing ArithmeticError when the remainder is nonzero.
UniPoly exact_divide_unipoly(const UniPoly& a, const UniPoly& b);

/// Monic gcd (zero when both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// A b-function as a multiset of rational roots, kept in increasing order.
struct RootList {
  std::vector<Rational> roots;

  RootList() = default;
  explicit RootList(std::vector<Rational> r);

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
  bool contains(const Rational& r) const;
  std::size_t multiplicity(const Rational& r) const;
  bool is_set() const;
  /// Distinct roots only.
  RootList as_set() const;
  /// Multiset difference removing one copy of each element of `other`.
  RootList without(const RootList& other) const;
  /// ∏ (s - root), monic.
  UniPoly to_polynomial() const;
  /// "{-7/6, -5/6}"
  std::string to_string() const;

  friend bool operator==(const RootList&, const RootList&) = default;
};

/// All rational roots of b with multiplicity. Throws InconsistencyError when
/// deflating by the rational roots leaves a nonconstant factor.
RootList rational_roots(const UniPoly& b);

}  // namespace lbf
