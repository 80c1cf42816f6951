#include "lbf/cohomology.hpp"

#include <algorithm>

#include "lbf/bfunction.hpp"
#include "lbf/errors.hpp"
#include "lbf/linalg.hpp"

namespace lbf {

CohomClass CohomClass::monomial(const Monomial& lambda, const Rational& c) {
  CohomClass out(lambda.size());
  out.add_term(lambda, c);
  return out;
}

Rational CohomClass::coefficient(const Monomial& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Rational(0) : it->second;
}

void CohomClass::add_term(const Monomial& lambda, const Rational& c) {
  if (lambda.size() != nvars_) throw StructuralError("CohomClass: exponent length mismatch");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(lambda, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CohomClass& CohomClass::operator+=(const CohomClass& o) {
  if (o.nvars_ != nvars_) throw StructuralError("CohomClass: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CohomClass& CohomClass::operator-=(const CohomClass& o) {
  if (o.nvars_ != nvars_) throw StructuralError("CohomClass: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CohomClass& CohomClass::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

const Monomial& CohomClass::head(const MonomialOrder& ord) const {
  if (terms_.empty()) throw PreconditionError("head of the zero class");
  const Monomial* best = &terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    if (ord.greater(m, *best)) best = &m;
  return *best;
}

std::string CohomClass::to_string(const std::vector<std::string>& symbols) const {
  if (terms_.empty()) return "0";
  if (symbols.size() != nvars_) throw StructuralError("CohomClass: wrong number of symbol names");
  MonomialOrder ord = MonomialOrder::deglex(nvars_);
  std::vector<const std::pair<const Monomial, Rational>*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) { return ord.greater(a->first, b->first); });
  std::string out;
  bool leading = true;
  for (const auto* t : sorted) {
    out += format_term(t->second, t->first, symbols, leading);
    leading = false;
  }
  return out;
}

std::vector<std::string> cohom_symbols(const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& v : vars) out.push_back("xi_" + v);
  return out;
}

std::vector<Monomial> EchelonBasis::heads() const {
  std::vector<Monomial> out;
  for (const auto& c : classes) out.push_back(c.head(order));
  return out;
}

CohomClass act_polynomial(const MultiPoly& p, const CohomClass& psi) {
  if (p.nvars() != psi.nvars()) throw StructuralError("act_polynomial: variable count mismatch");
  CohomClass out(psi.nvars());
  for (const auto& [lambda, c] : psi.terms())
    for (const auto& [alpha, a] : p.terms())
      if (alpha.divides(lambda)) out.add_term(lambda.quotient(alpha), a * c);
  return out;
}

CohomClass act_operator(const PBWOperator& p, const CohomClass& psi) {
  const PBWRing& ring = *p.ring();
  const std::size_t n = ring.n();
  if (n != psi.nvars()) throw StructuralError("act_operator: variable count mismatch");
  CohomClass out(n);
  for (const auto& [m, a] : p.terms()) {
    if (m[ring.s()] != 0 || m[ring.dt()] != 0)
      throw PreconditionError("act_operator: operator involves s or dt; substitute s first");
    for (const auto& [lambda, c] : psi.terms()) {
      // ∂_i^b raises λ_i by b with factor Π_{k<b} −(λ_i + k + 1).
      Monomial raised(n);
      Rational coef = a * c;
      for (std::size_t i = 0; i < n; ++i) {
        unsigned b = m[ring.d(i)];
        for (unsigned k = 0; k < b; ++k) coef *= -static_cast<long>(lambda[i] + k + 1);
        raised.set(i, lambda[i] + b);
      }
      Monomial alpha(n);
      for (std::size_t i = 0; i < n; ++i) alpha.set(i, m[ring.x(i)]);
      if (alpha.divides(raised)) out.add_term(raised.quotient(alpha), coef);
    }
  }
  return out;
}

namespace {

void monomials_up_to(std::size_t n, unsigned d, std::vector<Monomial>& out) {
  Monomial m(n);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == n) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m.set(i, e);
      self(self, i + 1, left - e);
    }
    m.set(i, 0);
  };
  rec(rec, 0, d);
}

// Echelon basis of the span of `vecs`, columns indexing `cols` (largest first).
EchelonBasis to_echelon(const std::vector<SparseVec>& vecs, const std::vector<Monomial>& cols,
                        const MonomialOrder& ord) {
  SparseEchelon ech(cols.size());
  for (const auto& v : vecs) ech.insert(v);
  EchelonBasis out{ord, {}};
  auto red = ech.reduced();
  for (auto it = red.rbegin(); it != red.rend(); ++it) {
    CohomClass c(cols.empty() ? 0 : cols.front().size());
    for (const auto& [col, v] : it->second) c.add_term(cols[col], v);
    out.classes.push_back(std::move(c));
  }
  return out;
}

}  // namespace

EchelonBasis solve_H_F0(const std::vector<MultiPoly>& F0, const CohomologyOptions& opts) {
  if (F0.empty()) throw PreconditionError("solve_H_F0: empty system");
  const std::size_t n = F0.front().nvars();
  for (const auto& h : F0) {
    if (h.nvars() != n) throw StructuralError("solve_H_F0: variable count mismatch");
    if (h.constant_term() != 0) throw PreconditionError("solve_H_F0: " + h.to_string() + " does not vanish at the origin");
  }
  MonomialOrder ord = opts.order ? *opts.order : MonomialOrder::deglex(n);
  if (ord.nvars() != n) throw StructuralError("solve_H_F0: order has the wrong number of variables");

  std::size_t prev = 0;
  for (unsigned d = 0; d <= opts.degree_cap; ++d) {
    std::vector<Monomial> cols;
    monomials_up_to(n, d, cols);
    std::sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });

    // Row (h, μ) collects the coefficient of ξ^μ in h ∗ ξ^λ for every column λ.
    std::map<std::pair<std::size_t, Monomial>, SparseVec> rows;
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t k = 0; k < F0.size(); ++k)
        for (const auto& [alpha, c] : F0[k].terms())
          if (alpha.divides(cols[j])) rows[{k, cols[j].quotient(alpha)}].emplace_back(j, c);
    SparseEchelon ech(cols.size());
    for (const auto& [key, row] : rows) ech.insert(row);
    std::size_t dim = cols.size() - ech.rank();
    if (dim == prev) return to_echelon(ech.kernel(), cols, ord);
    prev = dim;
  }
  throw ResourceError("solve_H_F0: no stabilization below degree " + std::to_string(opts.degree_cap) +
                          " (singularity probably not isolated)",
                      0, prev, 0);
}

EchelonBasis cohomology_solution_space(const MultiPoly& f, const Rational& gamma, const RootCertificate& cert,
                                       const CohomologyOptions& opts) {
  if (!cert.is_factor || cert.basis.generators.empty())
    throw PreconditionError("cohomology_solution_space: s - gamma is not a factor");
  if (cert.gamma != gamma) throw PreconditionError("cohomology_solution_space: certificate is for another root");
  const PBWRingPtr& ring = cert.basis.generators.front().ring();
  if (f.vars() != ring->xnames()) throw StructuralError("cohomology_solution_space: variable names differ");
  const std::size_t n = ring->n();

  PBWOperator s_minus = PBWOperator::generator(ring, ring->s()) - PBWOperator::constant(ring, gamma);
  std::vector<MultiPoly> P0;
  std::vector<PBWOperator> P1;
  for (const auto& g : cert.basis.generators) {
    if (g == s_minus) continue;
    PBWOperator h = g.substitute_s(gamma);
    if (h.is_zero()) continue;
    if (h.in_Cx())
      P0.push_back(h.to_x_poly());
    else
      P1.push_back(std::move(h));
  }
  std::vector<MultiPoly> F0 = P0;
  F0.push_back(f);
  for (std::size_t i = 0; i < n; ++i) F0.push_back(f.derivative(i));

  EchelonBasis G0 = solve_H_F0(F0, opts);
  EchelonBasis Psi{G0.order, {}};
  std::vector<CohomClass> L;
  // G0 is sorted by increasing head already.
  for (const auto& psi : G0.classes) {
    // p ∗ (ψ + Σ c_i ς_i) = 0 for every p, one equation per ξ-monomial.
    std::vector<std::pair<SparseVec, Rational>> eqs;
    for (const auto& p : P1) {
      std::map<Monomial, std::pair<SparseVec, Rational>> byMono;
      CohomClass image = act_operator(p, psi);
      for (const auto& [m, v] : image.terms()) byMono[m].second = -v;
      for (std::size_t i = 0; i < L.size(); ++i) {
        CohomClass li = act_operator(p, L[i]);
        for (const auto& [m, v] : li.terms()) byMono[m].first.emplace_back(i, v);
      }
      for (auto& [m, e] : byMono) eqs.push_back(std::move(e));
    }
    auto sol = solve_linear(eqs, L.size());
    if (sol) {
      CohomClass phi = psi;
      for (std::size_t i = 0; i < L.size(); ++i)
        if ((*sol)[i] != 0) phi += (*sol)[i] * L[i];
      Psi.classes.push_back(std::move(phi));
    } else {
      L.push_back(psi);
    }
  }
  return Psi;
}

std::size_t milnor_number(const MultiPoly& f, const CohomologyOptions& opts) {
  if (f.is_constant()) throw PreconditionError("milnor_number: constant polynomial");
  std::vector<MultiPoly> df;
  for (std::size_t i = 0; i < f.nvars(); ++i) df.push_back(f.derivative(i));
  for (const auto& g : df)
    if (g.constant_term() != 0) throw PreconditionError("milnor_number: the origin is not a critical point");
  return solve_H_F0(df, opts).dimension();
}

}  // namespace lbf
