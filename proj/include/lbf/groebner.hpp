#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lbf/monomial.hpp"
#include "lbf/pbw.hpp"

namespace lbf {

enum class PairStrategy { Normal, Sugar };

/// Exact: fraction-free integer arithmetic throughout. Modular: the basis is
/// computed modulo word-size primes and lifted by Chinese remaindering and
/// rational reconstruction; a result is accepted once an extra prime agrees.
enum class CoefficientMode { Exact, Modular };

struct GroebnerOptions {
  std::size_t max_pairs = 2'000'000;
  /// Largest support any intermediate operator may reach.
  std::size_t max_terms = 2'000'000;
  PairStrategy strategy = PairStrategy::Sugar;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  CoefficientMode mode = CoefficientMode::Modular;
  std::size_t max_primes = 64;
  /// Term operations allowed in one run (one prime in modular mode); 0 for no cap.
  std::size_t max_work = 0;
  /// Later primes replay the useful S-pairs of the first one.
  bool trace = true;
};

struct GroebnerStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_discarded = 0;
  std::size_t zero_reductions = 0;
  std::size_t reduction_steps = 0;
  std::size_t term_operations = 0;
  std::size_t primes_used = 0;
};

struct GroebnerBasis {
  std::vector<PBWOperator> generators;
  MonomialOrder order;
  bool reduced = false;
  GroebnerStats stats;

  bool is_unit() const;
};

/// Leading monomial and coefficient of a nonzero operator under `ord`.
const Monomial& leading_monomial(const PBWOperator& p, const MonomialOrder& ord);
Rational leading_coefficient(const PBWOperator& p, const MonomialOrder& ord);

/// Full left normal form of h modulo G: h - r lies in the left ideal of G and
/// no term of r is divisible by a leading monomial of G.
PBWOperator left_reduce(const PBWOperator& h, std::span<const PBWOperator> G, const MonomialOrder& ord);

/// Reduced left Gröbner basis of the left ideal generated by F. Throws
/// ResourceError when a cap in `opts` is exceeded.
GroebnerBasis buchberger(std::span<const PBWOperator> F, const MonomialOrder& ord,
                         const GroebnerOptions& opts = {});

/// Accepts or rejects a reconstructed candidate (modular mode only).
using BasisCheck = std::function<bool(const std::vector<PBWOperator>&)>;

/// Elements of the reduced basis of <F> that involve only `keep`; by
/// elimination they generate the intersection with that subring. Throws
/// PreconditionError unless `ord` eliminates the other variables. In modular
/// mode only these elements are lifted, and `check` (if given) must accept
/// them before they are returned.
std::vector<PBWOperator> eliminate(std::span<const PBWOperator> F, const MonomialOrder& ord,
                                   std::span<const std::size_t> keep, const GroebnerOptions& opts = {},
                                   const BasisCheck& check = {}, GroebnerStats* stats = nullptr);

/// Generators of G involving only `keep`. Throws PreconditionError unless the
/// order eliminates every other variable.
std::vector<PBWOperator> extract_subring(const GroebnerBasis& G, std::span<const std::size_t> keep);

}  // namespace lbf
