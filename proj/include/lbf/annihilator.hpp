#pragma once

#include <vector>

#include "lbf/groebner.hpp"
#include "lbf/multipoly.hpp"
#include "lbf/pbw.hpp"

namespace lbf {

/// {f dt + s} ∪ {d_i + (∂f/∂x_i) dt}. Throws PreconditionError for constant f.
std::vector<PBWOperator> bm_ideal(const PBWRingPtr& ring, const MultiPoly& f);

/// dt ≫ (x, d, s) with degree reverse lexicographic order in the lower block.
MonomialOrder annihilator_order(const PBWRing& ring);

/// Basis of Ann(f^s) ⊂ D[s], obtained by eliminating dt. Without a max_work cap
/// in `opts`, the variable order inside the lower block may be reversed; the
/// order actually used is stored in `order`.
std::vector<PBWOperator> ann_fs(const PBWRingPtr& ring, const MultiPoly& f, const GroebnerOptions& opts = {},
                                MonomialOrder* order = nullptr);

}  // namespace lbf
