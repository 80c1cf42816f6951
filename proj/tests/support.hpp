#pragma once

#include <random>
#include <string>
#include <vector>

#include "lbf/groebner.hpp"
#include "lbf/monomial.hpp"
#include "lbf/multipoly.hpp"
#include "lbf/parse.hpp"
#include "lbf/pbw.hpp"
#include "lbf/rational.hpp"

namespace lbf::test {

inline MultiPoly poly(const std::string& text, const std::string& vars) {
  return parse_poly(text, parse_var_list(vars));
}

// Operators are written in normal order (x before d before s before dt), so
// the commutative parse gives the canonical form directly.
inline PBWOperator op(const PBWRingPtr& ring, const std::string& text) {
  MultiPoly p = parse_poly(text, ring->names());
  PBWOperator out(ring);
  for (const auto& [m, c] : p.terms()) out.add_term(m, c);
  return out;
}

inline Rational q(const std::string& text) { return parse_rational(text); }

/// Buchberger's criterion: every S-polynomial of G left-reduces to zero.
inline bool s_polynomials_vanish(const std::vector<PBWOperator>& G, const MonomialOrder& ord) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      const Monomial& a = leading_monomial(G[i], ord);
      const Monomial& b = leading_monomial(G[j], ord);
      Monomial l = a.lcm(b);
      PBWRingPtr ring = G[i].ring();
      PBWOperator sp = PBWOperator::term(ring, l.quotient(a), leading_coefficient(G[j], ord)) * G[i] -
                       PBWOperator::term(ring, l.quotient(b), leading_coefficient(G[i], ord)) * G[j];
      if (!left_reduce(sp, G, ord).is_zero()) return false;
    }
  return true;
}

class Random {
 public:
  explicit Random(unsigned seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Rational rational() {
    int den = integer(1, 6);
    return make_rational(integer(-9, 9), den);
  }

  Monomial monomial(std::size_t nvars, unsigned maxexp) {
    Monomial m(nvars);
    for (std::size_t i = 0; i < nvars; ++i) m.set(i, static_cast<unsigned>(integer(0, static_cast<int>(maxexp))));
    return m;
  }

  MultiPoly poly(const std::vector<std::string>& vars, std::size_t terms, unsigned maxexp) {
    MultiPoly p(vars);
    for (std::size_t k = 0; k < terms; ++k) p.add_term(monomial(vars.size(), maxexp), rational());
    return p;
  }

  PBWOperator op(const PBWRingPtr& ring, std::size_t terms, unsigned maxexp) {
    PBWOperator p(ring);
    for (std::size_t k = 0; k < terms; ++k) p.add_term(monomial(ring->nvars(), maxexp), rational());
    return p;
  }

 private:
  std::mt19937 gen_;
};

}  // namespace lbf::test
