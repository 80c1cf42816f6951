#include "lbf/annihilator.hpp"

#include <numeric>

#include "lbf/errors.hpp"

namespace lbf {

std::vector<PBWOperator> bm_ideal(const PBWRingPtr& ring, const MultiPoly& f) {
  if (f.is_constant()) throw PreconditionError("bm_ideal: f is constant");
  MultiPoly g = f.rename_vars(ring->xnames());
  PBWOperator dt = PBWOperator::generator(ring, ring->dt());
  std::vector<PBWOperator> out;
  out.push_back(PBWOperator::from_poly(ring, g) * dt + PBWOperator::generator(ring, ring->s()));
  for (std::size_t i = 0; i < ring->n(); ++i)
    out.push_back(PBWOperator::generator(ring, ring->d(i)) + PBWOperator::from_poly(ring, g.derivative(i)) * dt);
  return out;
}

MonomialOrder annihilator_order(const PBWRing& ring) {
  std::vector<std::size_t> rest(ring.nvars() - 1);
  std::iota(rest.begin(), rest.end(), 0);
  return MonomialOrder(ring.nvars(), {OrderBlock{{ring.dt()}, BaseOrder::DegLex}, OrderBlock{rest, BaseOrder::DegRevLex}});
}

namespace {

// dt ≫ (x_n..x_1, d_n..d_1, s) drl.
MonomialOrder reversed_annihilator_order(const PBWRing& ring) {
  std::vector<std::size_t> rest;
  for (std::size_t i = ring.n(); i-- > 0;) rest.push_back(i);
  for (std::size_t i = ring.n(); i-- > 0;) rest.push_back(ring.d(i));
  rest.push_back(ring.s());
  return MonomialOrder(ring.nvars(), {OrderBlock{{ring.dt()}, BaseOrder::DegLex}, OrderBlock{rest, BaseOrder::DegRevLex}});
}

}  // namespace

std::vector<PBWOperator> ann_fs(const PBWRingPtr& ring, const MultiPoly& f, const GroebnerOptions& opts,
                                MonomialOrder* order) {
  std::vector<PBWOperator> gens = bm_ideal(ring, f);
  std::vector<std::size_t> keep(ring->nvars() - 1);
  std::iota(keep.begin(), keep.end(), 0);
  // Lifted candidates must annihilate f^s exactly.
  auto annihilates = [&](const std::vector<PBWOperator>& basis) {
    for (const auto& p : basis)
      if (!apply_to_fs(p, f).numerator.is_zero()) return false;
    return true;
  };
  if (opts.max_work != 0 || ring->n() < 2) {
    if (order) *order = annihilator_order(*ring);
    return eliminate(gens, annihilator_order(*ring), keep, opts, annihilates);
  }

  // Either order can be far slower than the other; alternate under a growing work cap.
  const MonomialOrder orders[] = {annihilator_order(*ring), reversed_annihilator_order(*ring)};
  GroebnerOptions capped = opts;
  for (capped.max_work = 8'000'000;; capped.max_work *= 4) {
    for (const auto& ord : orders) {
      try {
        auto out = eliminate(gens, ord, keep, capped, annihilates);
        if (order) *order = ord;
        return out;
      } catch (const WorkLimitError&) {
      }
    }
  }
}

}  // namespace lbf
