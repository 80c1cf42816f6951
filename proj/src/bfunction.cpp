#include "lbf/bfunction.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lbf/annihilator.hpp"
#include "lbf/errors.hpp"
#include "parallel.hpp"

namespace lbf {

namespace {

PBWRingPtr ring_for(const MultiPoly& f) { return make_pbw_ring(f.vars()); }

const PBWRingPtr& ring_of(const std::vector<PBWOperator>& ann, const MultiPoly& f) {
  if (ann.empty()) throw PreconditionError("empty annihilator basis");
  const PBWRingPtr& ring = ann.front().ring();
  if (ring->xnames() != f.vars()) throw StructuralError("annihilator and polynomial use different variables");
  return ring;
}

// dt ≫ (x, d) degrevlex ≫ s.
MonomialOrder s_elimination_order(const PBWRing& ring) {
  std::vector<std::size_t> mid;
  for (std::size_t i = 0; i < ring.n(); ++i) mid.push_back(ring.x(i));
  for (std::size_t i = 0; i < ring.n(); ++i) mid.push_back(ring.d(i));
  return MonomialOrder(ring.nvars(), {{{ring.dt()}, BaseOrder::DegLex},
                                      {mid, BaseOrder::DegRevLex},
                                      {{ring.s()}, BaseOrder::DegLex}});
}

RootList bfunction_from(const std::vector<PBWOperator>& ann, const MultiPoly& f, bool reduced,
                        const BFunctionOptions& opts) {
  const PBWRingPtr& ring = ring_of(ann, f);
  if (f.is_constant()) throw PreconditionError("b-function of a constant");
  std::vector<PBWOperator> gens = ann;
  gens.push_back(PBWOperator::from_poly(ring, f));
  if (reduced)
    for (std::size_t i = 0; i < ring->n(); ++i) gens.push_back(PBWOperator::from_poly(ring, f.derivative(i)));
  std::vector<std::size_t> keep{ring->s()};
  auto found = eliminate(gens, s_elimination_order(*ring), keep, opts.groebner);
  std::optional<UniPoly> b;
  for (const auto& p : found)
    if (!p.is_constant() && (!b || p.to_s_poly().degree() < b->degree())) b = p.to_s_poly();
  if (!b) {
    if (reduced && !found.empty()) throw PreconditionError("the singular locus of f is empty");
    throw InconsistencyError("no univariate element in the eliminated basis");
  }
  RootList roots = rational_roots(*b);
  if (static_cast<int>(roots.size()) != b->degree())
    throw InconsistencyError("b-function " + b->to_string("s") + " has non-rational roots");
  return roots;
}

}  // namespace

RootList global_bfunction(const std::vector<PBWOperator>& ann, const MultiPoly& f, const BFunctionOptions& opts) {
  return bfunction_from(ann, f, false, opts);
}

RootList global_reduced_bfunction(const std::vector<PBWOperator>& ann, const MultiPoly& f,
                                  const BFunctionOptions& opts) {
  return bfunction_from(ann, f, true, opts);
}

RootList global_bfunction(const MultiPoly& f, const BFunctionOptions& opts) {
  if (f.is_constant()) throw PreconditionError("b-function of a constant");
  auto ring = ring_for(f);
  return global_bfunction(ann_fs(ring, f, opts.groebner), f, opts);
}

RootList global_reduced_bfunction(const MultiPoly& f, const BFunctionOptions& opts) {
  if (f.is_constant()) throw PreconditionError("b-function of a constant");
  auto ring = ring_for(f);
  return global_reduced_bfunction(ann_fs(ring, f, opts.groebner), f, opts);
}

UniPoly poincare_polynomial(const WeightSystem& ws) {
  UniPoly num(std::vector<Rational>{1}), den(std::vector<Rational>{1});
  UniPoly one(std::vector<Rational>{1});
  for (long w : ws.w) {
    if (ws.d - w <= 0) throw PreconditionError("invalid weight type " + ws.to_string());
    num = num * (UniPoly::monomial(static_cast<unsigned>(ws.d - w)) - one);
    den = den * (UniPoly::monomial(static_cast<unsigned>(w)) - one);
  }
  return exact_divide_unipoly(num, den);
}

RootList wh_bfunction_roots(const WeightSystem& ws) {
  UniPoly P = poincare_polynomial(ws);
  long w0 = ws.weight_sum();
  std::vector<Rational> roots;
  for (int a = 0; a <= P.degree(); ++a)
    if (P.coefficient(a) != 0) roots.push_back(make_rational(-(a + w0), ws.d));
  return RootList(std::move(roots));
}

RootList candidate_roots(const RootList& E0, unsigned n, unsigned kmax) {
  std::set<Rational> out;
  for (const auto& g : E0.roots)
    for (unsigned k = 0; k <= kmax; ++k) {
      Rational c = g + k;
      if (c > -static_cast<long>(n) && c < 0) out.insert(c);
    }
  return RootList(std::vector<Rational>(out.begin(), out.end()));
}

MonomialOrder certification_order(const PBWRing& ring) {
  std::vector<std::size_t> ds, xs;
  for (std::size_t i = 0; i < ring.n(); ++i) ds.push_back(ring.d(i));
  for (std::size_t i = ring.n(); i-- > 0;) xs.push_back(ring.x(i));
  return MonomialOrder(ring.nvars(), {{{ring.dt()}, BaseOrder::DegLex},
                                      {ds, BaseOrder::DegLex},
                                      {xs, BaseOrder::DegLex},
                                      {{ring.s()}, BaseOrder::DegLex}});
}

RootCertificate certify_root(const std::vector<PBWOperator>& ann, const MultiPoly& f, const Rational& gamma,
                             const GroebnerOptions& opts) {
  return certify_root(ann, f, gamma, certification_order(*ring_of(ann, f)), opts);
}

RootCertificate certify_root(const std::vector<PBWOperator>& ann, const MultiPoly& f, const Rational& gamma,
                             const MonomialOrder& ord, const GroebnerOptions& opts) {
  const PBWRingPtr& ring = ring_of(ann, f);
  std::vector<std::size_t> upper;
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (v != ring->s()) upper.push_back(v);
  if (ord.nvars() != ring->nvars() || !ord.eliminates(upper))
    throw PreconditionError("certify_root: the order must rank s below every other variable");
  // s is central, so modulo s−γ every generator may be taken with s = γ.
  std::vector<PBWOperator> gens;
  for (const auto& a : ann) gens.push_back(a.substitute_s(gamma));
  gens.push_back(PBWOperator::from_poly(ring, f));
  for (std::size_t i = 0; i < ring->n(); ++i) gens.push_back(PBWOperator::from_poly(ring, f.derivative(i)));

  RootCertificate cert;
  cert.gamma = gamma;
  cert.basis = buchberger(gens, ord, opts);
  if (cert.basis.is_unit()) return cert;
  cert.is_factor = true;
  PBWOperator s_minus = PBWOperator::generator(ring, ring->s()) - PBWOperator::constant(ring, gamma);
  cert.basis.generators.insert(cert.basis.generators.begin(), s_minus);

  cert.origin_in_support = true;
  for (const auto& g : cert.basis.generators)
    if (g.in_Cx()) {
      cert.polynomial_part.push_back(g.to_x_poly());
      if (cert.polynomial_part.back().constant_term() != 0) cert.origin_in_support = false;
    }
  return cert;
}

RootList local_bfunction_via_support(const MultiPoly& f, const BFunctionOptions& opts) {
  milnor_number(f, opts.cohomology);
  auto ring = ring_for(f);
  auto ann = ann_fs(ring, f, opts.groebner);
  RootList global = global_reduced_bfunction(ann, f, opts).as_set();
  std::vector<Rational> kept;
  for (const auto& g : global.roots)
    if (certify_root(ann, f, g, opts.groebner).origin_in_support) kept.push_back(g);
  return RootList(std::move(kept));
}

LocalBFResult local_bfunction_swh(const MultiPoly& f, const WeightSystem& ws, const BFunctionOptions& opts) {
  if (f.nvars() != ws.w.size()) throw StructuralError("weight system and polynomial differ in variable count");
  if (!classify_swh(f, ws).ok) throw PreconditionError("f is not semi-weighted homogeneous of type " + ws.to_string());
  const long n = static_cast<long>(f.nvars());
  const std::size_t mu0 = static_cast<std::size_t>(poincare_polynomial(ws).evaluate(1).get_num().get_si());
  RootList E0 = wh_bfunction_roots(ws);

  auto ring = ring_for(f);
  auto ann = ann_fs(ring, f, opts.groebner);

  LocalBFResult result;
  result.milnor = mu0;
  std::size_t mu = 0;
  std::vector<Rational> accepted;
  for (unsigned k = 0; mu != mu0; ++k) {
    if (k > opts.kmax) {
      std::string msg = "no agreement with the Milnor number " + std::to_string(mu0) + " after shifts up to " +
                        std::to_string(opts.kmax) + ": roots " + RootList(accepted).to_string() + ", dims";
      for (const auto& [g, d] : result.dims) msg += " " + to_string(g) + ":" + std::to_string(d);
      throw InconsistencyError(msg);
    }
    std::vector<Rational> level;
    for (const auto& g : E0.roots) {
      Rational c = g + k;
      if (c > -n && c < 0 && std::find(accepted.begin(), accepted.end(), c) == accepted.end() &&
          std::find(level.begin(), level.end(), c) == level.end())
        level.push_back(c);
    }
    std::vector<std::size_t> dims(level.size(), 0);
    detail::parallel_for(level.size(), opts.jobs, [&](std::size_t i) {
      RootCertificate cert = certify_root(ann, f, level[i], opts.groebner);
      if (!cert.is_factor || !cert.origin_in_support) return;
      dims[i] = cohomology_solution_space(f, level[i], cert, opts.cohomology).dimension();
      if (dims[i] == 0)
        throw InconsistencyError("root " + to_string(level[i]) + " is supported at the origin but has no solutions");
    });
    for (std::size_t i = 0; i < level.size(); ++i)
      if (dims[i] > 0) {
        accepted.push_back(level[i]);
        result.dims[level[i]] = dims[i];
        mu += dims[i];
      }
    if (mu > mu0)
      throw InconsistencyError("solution dimensions sum to " + std::to_string(mu) + ", above the Milnor number " +
                               std::to_string(mu0));
  }
  result.roots = RootList(std::move(accepted));
  return result;
}

}  // namespace lbf
