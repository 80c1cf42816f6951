#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbf/monomial.hpp"
#include "lbf/multipoly.hpp"
#include "lbf/pbw.hpp"
#include "lbf/rational.hpp"

namespace lbf {

struct RootCertificate;

/// Algebraic local cohomology class supported at the origin, written as
/// Σ c_λ ξ^λ where ξ^λ stands for [1 / x^{λ+1}].
class CohomClass {
 public:
  CohomClass() = default;
  explicit CohomClass(std::size_t nvars) : nvars_(nvars) {}

  static CohomClass monomial(const Monomial& lambda, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& lambda) const;

  void add_term(const Monomial& lambda, const Rational& c);
  CohomClass& operator+=(const CohomClass& o);
  CohomClass& operator-=(const CohomClass& o);
  CohomClass& operator*=(const Rational& c);
  friend CohomClass operator+(CohomClass a, const CohomClass& b) { return a += b; }
  friend CohomClass operator-(CohomClass a, const CohomClass& b) { return a -= b; }
  friend CohomClass operator*(const Rational& c, CohomClass a) { return a *= c; }
  friend bool operator==(const CohomClass&, const CohomClass&) = default;

  /// Largest monomial of the support under `ord`; the class must be nonzero.
  const Monomial& head(const MonomialOrder& ord) const;

  /// Renders with the given symbol names, e.g. {"xi","eta","zeta"}.
  std::string to_string(const std::vector<std::string>& symbols) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// Default symbol names: "xi_" followed by the variable name.
std::vector<std::string> cohom_symbols(const std::vector<std::string>& vars);

/// Classes with strictly increasing heads under `order`, each head missing
/// from every other class.
struct EchelonBasis {
  MonomialOrder order;
  std::vector<CohomClass> classes;

  std::size_t dimension() const { return classes.size(); }
  std::vector<Monomial> heads() const;
};

/// x^α ∗ ξ^λ = ξ^{λ-α} when λ ≥ α, else 0; extended linearly.
CohomClass act_polynomial(const MultiPoly& p, const CohomClass& psi);

/// Applies each canonical term x^α ∂^β: first ∂^β, then x^α. The operator must
/// be free of s and dt.
CohomClass act_operator(const PBWOperator& p, const CohomClass& psi);

struct CohomologyOptions {
  unsigned degree_cap = 64;
  /// Order on ξ used for head monomials; deglex with ξ_1 > … > ξ_n if unset.
  std::optional<MonomialOrder> order;
};

/// Basis of {ψ : h ∗ ψ = 0 for all h ∈ F0}, found degree by degree until the
/// dimension stops growing.
EchelonBasis solve_H_F0(const std::vector<MultiPoly>& F0, const CohomologyOptions& opts = {});

/// Local cohomology solutions of the module D/(G) attached to (γ, f), where
/// G is the certificate basis with s−γ removed and s set to γ.
EchelonBasis cohomology_solution_space(const MultiPoly& f, const Rational& gamma, const RootCertificate& cert,
                                       const CohomologyOptions& opts = {});

/// dim of the solutions annihilated by all partial derivatives of f.
std::size_t milnor_number(const MultiPoly& f, const CohomologyOptions& opts = {});

}  // namespace lbf
