#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "lbf/cohomology.hpp"
#include "lbf/groebner.hpp"
#include "lbf/multipoly.hpp"
#include "lbf/pbw.hpp"
#include "lbf/unipoly.hpp"
#include "lbf/weights.hpp"

namespace lbf {

struct RootCertificate {
  Rational gamma;
  /// The ideal Ann(f^s) + (f, ∂f) + (s−γ) is proper.
  bool is_factor = false;
  GroebnerBasis basis;
  /// Elements of the basis lying in Q[x].
  std::vector<MultiPoly> polynomial_part;
  bool origin_in_support = false;
};

struct LocalBFResult {
  RootList roots;
  std::map<Rational, std::size_t> dims;
  std::size_t milnor = 0;
};

struct BFunctionOptions {
  GroebnerOptions groebner;
  CohomologyOptions cohomology;
  unsigned kmax = 2;
  /// Worker threads for independent certificates.
  unsigned jobs = 1;
};

/// Roots of b_f, with multiplicity.
RootList global_bfunction(const MultiPoly& f, const BFunctionOptions& opts = {});
/// Roots of b_f / (s+1), with multiplicity.
RootList global_reduced_bfunction(const MultiPoly& f, const BFunctionOptions& opts = {});

/// Same, starting from a known basis of Ann(f^s).
RootList global_bfunction(const std::vector<PBWOperator>& ann, const MultiPoly& f, const BFunctionOptions& opts = {});
RootList global_reduced_bfunction(const std::vector<PBWOperator>& ann, const MultiPoly& f,
                                  const BFunctionOptions& opts = {});

/// Π (t^{d-w_i} - 1) / Π (t^{w_i} - 1).
UniPoly poincare_polynomial(const WeightSystem& ws);

/// {−(α + w_0)/d : t^α occurs in the Poincaré polynomial}, w_0 = Σ w_i.
RootList wh_bfunction_roots(const WeightSystem& ws);

/// {γ+k : γ ∈ E0, 0 ≤ k ≤ kmax, −n < γ+k < 0}.
RootList candidate_roots(const RootList& E0, unsigned n, unsigned kmax = 2);

/// dt ≫ (d_1 > … > d_n, deglex) ≫ (x_n > … > x_1, deglex) ≫ s.
MonomialOrder certification_order(const PBWRing& ring);

/// Basis of Ann(f^s) + (f, ∂f/∂x_i) + (s−γ), given Ann(f^s), and the data
/// read off from it.
RootCertificate certify_root(const std::vector<PBWOperator>& ann, const MultiPoly& f, const Rational& gamma,
                             const GroebnerOptions& opts = {});
/// Same under a caller-supplied order; it must rank s below every other variable.
RootCertificate certify_root(const std::vector<PBWOperator>& ann, const MultiPoly& f, const Rational& gamma,
                             const MonomialOrder& ord, const GroebnerOptions& opts = {});

/// Global reduced roots whose module is supported at the origin.
RootList local_bfunction_via_support(const MultiPoly& f, const BFunctionOptions& opts = {});

/// Local reduced b-function of a semi-weighted homogeneous f: candidates from
/// the weight type are certified level by level until the solution
/// dimensions add up to the Milnor number.
LocalBFResult local_bfunction_swh(const MultiPoly& f, const WeightSystem& ws, const BFunctionOptions& opts = {});

}  // namespace lbf
