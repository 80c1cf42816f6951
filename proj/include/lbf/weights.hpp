#pragma once

#include <string>
#include <vector>

#include "lbf/monomial.hpp"
#include "lbf/multipoly.hpp"

namespace lbf {

/// Weight type (d; w_1..w_n): all w_i >= 1 and d >= max w_i.
struct WeightSystem {
  long d = 0;
  std::vector<long> w;

  WeightSystem() = default;
  /// Throws PreconditionError when the invariants fail.
  WeightSystem(long degree, std::vector<long> weights);

  long weight_sum() const;
  std::string to_string() const;

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

/// Σ w_i a_i. Throws StructuralError when the lengths differ.
long weighted_degree(const Monomial& m, const WeightSystem& ws);

/// Split of f into its weighted-homogeneous part of degree d and the rest.
struct SwhSplit {
  MultiPoly f0;
  MultiPoly g;
  /// f0 != 0 and every term of g has weighted degree > d. The isolated
  /// singularity condition on f0 is not checked here.
  bool ok = false;
};

/// Throws PreconditionError if f is zero or f(0) != 0.
SwhSplit classify_swh(const MultiPoly& f, const WeightSystem& ws);

}  // namespace lbf
