#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lbf/monomial.hpp"
#include "lbf/multipoly.hpp"
#include "lbf/rational.hpp"
#include "lbf/unipoly.hpp"

namespace lbf {

/// Variable layout of D<s, dt>: x_1..x_n, d_1..d_n, s, dt. A PBW monomial is a
/// Monomial of length 2n+2 read in the canonical factor order
/// x^alpha d^beta s^j dt^k.
class PBWRing {
 public:
  explicit PBWRing(std::vector<std::string> xnames);

  std::size_t n() const { return xnames_.size(); }
  std::size_t nvars() const { return 2 * n() + 2; }
  std::size_t x(std::size_t i) const { return i; }
  std::size_t d(std::size_t i) const { return n() + i; }
  std::size_t s() const { return 2 * n(); }
  std::size_t dt() const { return 2 * n() + 1; }

  const std::vector<std::string>& xnames() const { return xnames_; }
  /// All 2n+2 names: the x names, "d" + each x name, "s", "dt".
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const PBWRing& a, const PBWRing& b) { return a.xnames_ == b.xnames_; }

 private:
  std::vector<std::string> xnames_;
  std::vector<std::string> names_;
};

using PBWRingPtr = std::shared_ptr<const PBWRing>;

PBWRingPtr make_pbw_ring(std::vector<std::string> xnames);

/// Element of D<s, dt> in canonical form; zero coefficients are never stored.
/// Subrings are recognised by predicates: D[s] (no dt), D (no s, no dt),
/// C[x] (only x) and C[s] (only s).
class PBWOperator {
 public:
  using TermMap = std::map<Monomial, Rational>;

  PBWOperator() = default;
  explicit PBWOperator(PBWRingPtr ring);

  static PBWOperator constant(PBWRingPtr ring, const Rational& c);
  /// The generator with index `var` in the PBWRing layout.
  static PBWOperator generator(PBWRingPtr ring, std::size_t var);
  static PBWOperator term(PBWRingPtr ring, const Monomial& m, const Rational& c);
  /// Embeds a polynomial in the x variables (its variable names must match).
  static PBWOperator from_poly(PBWRingPtr ring, const MultiPoly& p);
  /// Embeds a polynomial in s.
  static PBWOperator from_s_poly(PBWRingPtr ring, const UniPoly& p);

  const PBWRingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  bool in_Ds() const;
  bool in_D() const;
  bool in_Cx() const;
  bool in_Cs() const;
  /// True when no term involves any of the listed variables.
  bool avoids(std::span<const std::size_t> vars) const;

  void add_term(const Monomial& m, const Rational& c);

  PBWOperator& operator+=(const PBWOperator& o);
  PBWOperator& operator-=(const PBWOperator& o);
  PBWOperator& operator*=(const Rational& c);
  friend PBWOperator operator+(PBWOperator a, const PBWOperator& b) { return a += b; }
  friend PBWOperator operator-(PBWOperator a, const PBWOperator& b) { return a -= b; }
  friend PBWOperator operator*(PBWOperator a, const Rational& c) { return a *= c; }
  friend PBWOperator operator*(const Rational& c, PBWOperator a) { return a *= c; }
  friend PBWOperator operator*(const PBWOperator& a, const PBWOperator& b);
  friend bool operator==(const PBWOperator& a, const PBWOperator& b);

  /// Replaces the central variable s by `value`.
  PBWOperator substitute_s(const Rational& value) const;
  /// Requires in_Cx().
  MultiPoly to_x_poly() const;
  /// Requires in_Cs().
  UniPoly to_s_poly() const;

  std::string to_string() const;

 private:
  friend PBWOperator pbw_multiply(const PBWOperator& a, const PBWOperator& b);
  void check_ring(const PBWOperator& o) const;

  PBWRingPtr ring_;
  TermMap terms_;
};

/// Canonical form of a * b.
PBWOperator pbw_multiply(const PBWOperator& a, const PBWOperator& b);

/// Image of an operator applied to f^s, written numerator * f^(s - shift).
/// The numerator lives in the polynomial ring (x_1..x_n, s).
struct FsImage {
  MultiPoly numerator;
  unsigned shift = 0;
};

/// p * f^s for p in D[s]; p annihilates f^s iff the numerator is zero.
/// Throws PreconditionError if p involves dt or f is zero.
FsImage apply_to_fs(const PBWOperator& p, const MultiPoly& f);

/// p * (image), used to check the module-action property.
FsImage apply_to_fs(const PBWOperator& p, const FsImage& image, const MultiPoly& f);

/// Rewrites both images over the larger shift and returns a - b's numerator.
MultiPoly fs_difference(const FsImage& a, const FsImage& b, const MultiPoly& f);

namespace detail {

/// Expands the product of two PBW monomials in a ring with n x-variables,
/// calling emit(Monomial, const Integer&) for every canonical term. Uses
///   d^b x^c = Σ_ν ∏ C(b_i, ν_i) (c_i)_{ν_i} x^{c-ν} d^{b-ν}
///   dt^k s^l = (s - k)^l dt^k.
template <class Emit>
void multiply_pbw_monomials(std::size_t n, const Monomial& a, const Monomial& b, Emit&& emit) {
  const std::size_t s = 2 * n;
  const std::size_t dt = 2 * n + 1;
  Monomial base = a * b;  // the leading term x^{α+γ} d^{β+δ} s^{j+l} dt^{k+m}

  unsigned overlap[Monomial::kMaxVars];
  bool weyl_trivial = true;
  for (std::size_t i = 0; i < n; ++i) {
    overlap[i] = std::min<unsigned>(a[n + i], b[i]);
    if (overlap[i]) weyl_trivial = false;
  }
  const unsigned k = a[dt];
  const unsigned l = b[s];
  const bool s_trivial = (k == 0 || l == 0);

  if (weyl_trivial && s_trivial) {
    static const Integer one = 1;
    emit(base, one);
    return;
  }

  // Per-variable Weyl coefficients C(β_i, ν) (γ_i)_ν.
  std::vector<std::vector<Integer>> wcoef(n);
  for (std::size_t i = 0; i < n; ++i) {
    wcoef[i].resize(overlap[i] + 1);
    Integer falling = 1;
    for (unsigned v = 0; v <= overlap[i]; ++v) {
      if (v > 0) falling *= static_cast<unsigned long>(b[i] - (v - 1));
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), a[n + i], v);
      wcoef[i][v] = binom * falling;
    }
  }

  // s-part: s^j (s-k)^l = Σ_i C(l,i) (-k)^{l-i} s^{j+i}; base has s^{j+l}.
  std::vector<Integer> scoef;
  if (s_trivial) {
    scoef.assign(1, Integer(1));
  } else {
    scoef.resize(l + 1);
    for (unsigned i = 0; i <= l; ++i) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), l, i);
      Integer power;
      mpz_ui_pow_ui(power.get_mpz_t(), k, l - i);
      if ((l - i) % 2 == 1) power = -power;
      // index by the drop l - i in the power of s
      scoef[l - i] = binom * power;
    }
  }

  unsigned nu[Monomial::kMaxVars] = {};
  Integer wc, c;
  while (true) {
    wc = 1;
    Monomial m = base;
    for (std::size_t i = 0; i < n; ++i) {
      if (nu[i]) {
        wc *= wcoef[i][nu[i]];
        m.set(i, m[i] - nu[i]);
        m.set(n + i, m[n + i] - nu[i]);
      }
    }
    for (std::size_t drop = 0; drop < scoef.size(); ++drop) {
      if (scoef[drop] == 0) continue;
      Monomial ms = m;
      if (drop) ms.set(s, m[s] - static_cast<unsigned>(drop));
      c = wc * scoef[drop];
      emit(ms, c);
    }
    std::size_t i = 0;
    while (i < n) {
      if (nu[i] < overlap[i]) {
        ++nu[i];
        break;
      }
      nu[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
}

}  // namespace detail

}  // namespace lbf
