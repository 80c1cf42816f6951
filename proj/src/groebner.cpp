#include "lbf/groebner.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "engine.hpp"
#include "lbf/errors.hpp"

namespace lbf {

using engine::Engine;
using engine::PArith;
using engine::ZArith;

bool GroebnerBasis::is_unit() const {
  return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero();
}

const Monomial& leading_monomial(const PBWOperator& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw PreconditionError("leading monomial of zero");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (!best || ord.greater(m, *best)) best = &m;
  return *best;
}

Rational leading_coefficient(const PBWOperator& p, const MonomialOrder& ord) {
  return p.terms().at(leading_monomial(p, ord));
}

namespace {

template <std::size_t W>
using ZPoly = engine::Poly<Integer, W>;
template <std::size_t W>
using PPoly = engine::Poly<std::uint64_t, W>;

PBWRingPtr common_ring(std::span<const PBWOperator> F) {
  PBWRingPtr ring;
  for (const auto& f : F) {
    if (f.is_zero() || !f.ring()) continue;
    if (!ring) ring = f.ring();
    else if (!(*ring == *f.ring())) throw StructuralError("generators belong to different rings");
  }
  if (!ring) throw PreconditionError("Gröbner basis of the zero ideal requested");
  return ring;
}

template <std::size_t W>
ZPoly<W> to_zpoly(const PBWOperator& p, const Engine<ZArith, W>& eng) {
  ZPoly<W> out;
  Integer den = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [m, c] : p.terms()) {
    out.terms.push_back(eng.term(m, c.get_num() * (den / c.get_den())));
    out.sugar = std::max(out.sugar, m.degree());
  }
  eng.sort_terms(out.terms);
  eng.refresh(out);
  eng.remove_content(out);
  return out;
}

template <std::size_t W>
bool to_ppoly(const PBWOperator& p, const Engine<PArith, W>& eng, PPoly<W>& out) {
  out = PPoly<W>{};
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t r;
    if (!eng.arith().from_rational(c, r)) return false;
    if (r) out.terms.push_back(eng.term(m, r));
    out.sugar = std::max(out.sugar, m.degree());
  }
  eng.sort_terms(out.terms);
  eng.refresh(out);
  return true;
}

template <std::size_t W>
PBWOperator monic_operator(const ZPoly<W>& p, const Engine<ZArith, W>& eng, const PBWRingPtr& ring) {
  PBWOperator out(ring);
  if (p.terms.empty()) return out;
  Rational inv = Rational(1) / Rational(p.lc());
  for (const auto& t : p.terms) out.add_term(eng.monomial(t.k), Rational(t.c) * inv);
  return out;
}

template <std::size_t W>
std::vector<PBWOperator> exact_basis(std::span<const PBWOperator> F, const MonomialOrder& ord,
                                     const GroebnerOptions& opts, const PBWRingPtr& ring, GroebnerStats& stats) {
  Engine<ZArith, W> eng(ord, ring->n(), opts);
  std::vector<ZPoly<W>> inputs;
  for (const auto& f : F)
    if (!f.is_zero()) inputs.push_back(to_zpoly(f, eng));
  std::vector<ZPoly<W>> G = *eng.run(std::move(inputs));
  stats = eng.stats;
  std::vector<PBWOperator> out;
  for (const auto& g : G) out.push_back(monic_operator(g, eng, ring));
  return out;
}

// ---- modular lifting -------------------------------------------------------

const std::vector<std::uint64_t>& word_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    Integer z;
    for (std::uint64_t c = (std::uint64_t(1) << 62) - 1; out.size() < 512; c -= 2) {
      mpz_set_ui(z.get_mpz_t(), c);
      if (mpz_probab_prime_p(z.get_mpz_t(), 30)) out.push_back(c);
    }
    return out;
  }();
  return primes;
}

// Wang's rational reconstruction of a mod m.
bool rational_reconstruct(const Integer& a, const Integer& m, Integer& bound, Rational& out) {
  Integer r0 = m, r1 = a, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

/// A basis modulo one prime, with plain residues.
using ResiduePoly = std::map<Monomial, std::uint64_t>;

struct LiftGroup {
  std::vector<Monomial> signature;  // leading monomials of the full basis
  std::vector<std::map<Monomial, Integer>> residues;  // kept elements only
  Integer modulus = 1;
  std::size_t primes = 0;
  std::optional<std::vector<PBWOperator>> candidate;
};

void crt_accumulate(LiftGroup& g, const std::vector<ResiduePoly>& kept, std::uint64_t p) {
  if (g.primes == 0) {
    g.residues.assign(kept.size(), {});
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (const auto& [m, r] : kept[i]) g.residues[i][m] = Integer(static_cast<unsigned long>(r));
    g.modulus = Integer(static_cast<unsigned long>(p));
    g.primes = 1;
    return;
  }
  PArith ar{p};
  std::uint64_t minv = ar.plain_inverse(mpz_fdiv_ui(g.modulus.get_mpz_t(), p));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    auto& acc = g.residues[i];
    for (const auto& [m, r] : kept[i]) acc.try_emplace(m, 0);
    for (auto& [m, x] : acc) {
      auto it = kept[i].find(m);
      std::uint64_t r = it == kept[i].end() ? 0 : it->second;
      std::uint64_t xm = mpz_fdiv_ui(x.get_mpz_t(), p);
      std::uint64_t diff = r >= xm ? r - xm : r + (p - xm);
      std::uint64_t t = static_cast<std::uint64_t>(static_cast<unsigned __int128>(diff) * minv % p);
      if (t) x += g.modulus * Integer(static_cast<unsigned long>(t));
    }
  }
  g.modulus *= Integer(static_cast<unsigned long>(p));
  ++g.primes;
}

std::optional<std::vector<PBWOperator>> reconstruct(const LiftGroup& g, const PBWRingPtr& ring) {
  Integer bound;
  Integer half = g.modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  std::vector<PBWOperator> out;
  for (const auto& poly : g.residues) {
    PBWOperator op(ring);
    for (const auto& [m, x] : poly) {
      if (x == 0) continue;
      Rational q;
      if (!rational_reconstruct(x, g.modulus, bound, q)) return std::nullopt;
      op.add_term(m, q);
    }
    out.push_back(std::move(op));
  }
  return out;
}

bool agrees_mod_p(const std::vector<PBWOperator>& cand, const std::vector<ResiduePoly>& kept, std::uint64_t p) {
  if (cand.size() != kept.size()) return false;
  PArith ar{p};
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (cand[i].terms().size() != kept[i].size()) return false;
    for (const auto& [m, c] : cand[i].terms()) {
      std::uint64_t r;
      if (!ar.from_rational(c, r)) return false;
      auto it = kept[i].find(m);
      if (it == kept[i].end() || it->second != ar.to_ui(r)) return false;
    }
  }
  return true;
}

template <std::size_t W>
std::vector<PBWOperator> modular_basis(std::span<const PBWOperator> F, const MonomialOrder& ord,
                                       const GroebnerOptions& opts, const PBWRingPtr& ring,
                                       std::span<const std::size_t> eliminated, const BasisCheck& check,
                                       GroebnerStats& stats) {
  std::vector<LiftGroup> groups;
  std::optional<engine::Trace<W>> trace;
  std::size_t used = 0;
  for (std::uint64_t p : word_primes()) {
    if (used >= opts.max_primes) break;
    Engine<PArith, W> eng(ord, ring->n(), opts, PArith{p});
    std::vector<PPoly<W>> inputs;
    bool good = true;
    for (const auto& f : F) {
      if (f.is_zero()) continue;
      PPoly<W> q;
      if (!to_ppoly(f, eng, q)) {
        good = false;
        break;
      }
      if (q.terms.empty() || eng.monomial(q.lm()) != leading_monomial(f, ord)) {
        good = false;  // leading coefficient vanishes modulo p
        break;
      }
      inputs.push_back(std::move(q));
    }
    if (!good) continue;
    ++used;
    std::optional<std::vector<PPoly<W>>> result;
    if (trace) {
      result = eng.run(inputs, nullptr, &*trace);
      if (!result) {
        Engine<PArith, W> fresh(ord, ring->n(), opts, PArith{p});
        result = fresh.run(std::move(inputs));
        stats = fresh.stats;
      } else {
        stats = eng.stats;
      }
    } else {
      engine::Trace<W> rec;
      result = eng.run(std::move(inputs), opts.trace ? &rec : nullptr);
      if (opts.trace) trace = std::move(rec);
      stats = eng.stats;
    }
    stats.primes_used = used;

    std::vector<Monomial> signature;
    std::vector<ResiduePoly> kept;
    for (const auto& g : *result) {
      signature.push_back(eng.monomial(g.lm()));
      ResiduePoly r;
      bool keep = true;
      for (const auto& t : g.terms) {
        for (std::size_t v : eliminated)
          if (eng.keys().exp(t.k, v)) keep = false;
        if (!keep) break;
        r.emplace(eng.monomial(t.k), eng.arith().to_ui(t.c));
      }
      if (keep) kept.push_back(std::move(r));
    }

    auto it = std::find_if(groups.begin(), groups.end(), [&](const LiftGroup& g) { return g.signature == signature; });
    if (it == groups.end()) {
      groups.push_back(LiftGroup{signature, {}, 1, 0, std::nullopt});
      it = groups.end() - 1;
    }
    LiftGroup& grp = *it;
    if (grp.candidate && agrees_mod_p(*grp.candidate, kept, p)) {
      if (!check || check(*grp.candidate)) return *grp.candidate;
    }
    crt_accumulate(grp, kept, p);
    grp.candidate = reconstruct(grp, ring);
  }
  throw ResourceError("modular lifting did not stabilise within " + std::to_string(opts.max_primes) + " primes",
                      stats.pairs_processed, 0, 0);
}

bool narrow_keys(const MonomialOrder& ord) { return engine::KeyMaker<4>::components(ord) <= 16; }

std::vector<PBWOperator> compute(std::span<const PBWOperator> F, const MonomialOrder& ord, const GroebnerOptions& opts,
                                 std::span<const std::size_t> eliminated, const BasisCheck& check,
                                 GroebnerStats& stats) {
  PBWRingPtr ring = common_ring(F);
  if (ord.nvars() != ring->nvars()) throw StructuralError("order and ring have different variable counts");
  if (opts.mode == CoefficientMode::Exact) {
    std::vector<PBWOperator> G =
        narrow_keys(ord) ? exact_basis<4>(F, ord, opts, ring, stats) : exact_basis<8>(F, ord, opts, ring, stats);
    if (eliminated.empty()) return G;
    std::vector<PBWOperator> out;
    for (auto& g : G)
      if (g.avoids(eliminated)) out.push_back(std::move(g));
    return out;
  }
  return narrow_keys(ord) ? modular_basis<4>(F, ord, opts, ring, eliminated, check, stats)
                          : modular_basis<8>(F, ord, opts, ring, eliminated, check, stats);
}

}  // namespace

namespace {

template <std::size_t W>
PBWOperator left_reduce_impl(const PBWOperator& h, std::span<const PBWOperator> G, const MonomialOrder& ord) {
  PBWRingPtr ring = h.ring();
  Engine<ZArith, W> eng(ord, ring->n(), GroebnerOptions{});
  std::vector<ZPoly<W>> polys;
  for (const auto& g : G)
    if (!g.is_zero()) polys.push_back(to_zpoly(g, eng));
  ZPoly<W> p = to_zpoly(h, eng);
  // to_zpoly scaled h by a positive rational; recover it from one term.
  Rational initial = Rational(p.terms.front().c) / h.terms().at(eng.monomial(p.terms.front().k));
  Rational scale = eng.reduce(p, polys, true) * initial;
  PBWOperator out(ring);
  for (const auto& t : p.terms) out.add_term(eng.monomial(t.k), Rational(t.c) / scale);
  return out;
}

}  // namespace

PBWOperator left_reduce(const PBWOperator& h, std::span<const PBWOperator> G, const MonomialOrder& ord) {
  if (h.is_zero()) return h;
  return narrow_keys(ord) ? left_reduce_impl<4>(h, G, ord) : left_reduce_impl<8>(h, G, ord);
}

GroebnerBasis buchberger(std::span<const PBWOperator> F, const MonomialOrder& ord, const GroebnerOptions& opts) {
  GroebnerBasis result;
  result.order = ord;
  result.generators = compute(F, ord, opts, {}, {}, result.stats);
  result.reduced = true;
  return result;
}

std::vector<PBWOperator> eliminate(std::span<const PBWOperator> F, const MonomialOrder& ord,
                                   std::span<const std::size_t> keep, const GroebnerOptions& opts,
                                   const BasisCheck& check, GroebnerStats* stats) {
  std::vector<bool> kept(ord.nvars(), false);
  for (std::size_t v : keep) {
    if (v >= ord.nvars()) throw StructuralError("eliminate: variable index out of range");
    kept[v] = true;
  }
  std::vector<std::size_t> eliminated;
  for (std::size_t v = 0; v < ord.nvars(); ++v)
    if (!kept[v]) eliminated.push_back(v);
  if (!ord.eliminates(eliminated))
    throw PreconditionError("eliminate: the order does not eliminate the discarded variables");
  GroebnerStats local;
  std::vector<PBWOperator> out = compute(F, ord, opts, eliminated, check, local);
  if (stats) *stats = local;
  return out;
}

std::vector<PBWOperator> extract_subring(const GroebnerBasis& G, std::span<const std::size_t> keep) {
  std::size_t nv = G.order.nvars();
  std::vector<bool> kept(nv, false);
  for (std::size_t v : keep) {
    if (v >= nv) throw StructuralError("extract_subring: variable index out of range");
    kept[v] = true;
  }
  std::vector<std::size_t> eliminated;
  for (std::size_t v = 0; v < nv; ++v)
    if (!kept[v]) eliminated.push_back(v);
  if (!G.order.eliminates(eliminated))
    throw PreconditionError("extract_subring: the order does not eliminate the discarded variables");
  std::vector<PBWOperator> out;
  for (const auto& g : G.generators)
    if (g.avoids(eliminated)) out.push_back(g);
  return out;
}

}  // namespace lbf
