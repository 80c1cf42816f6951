#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lbf/rational.hpp"

namespace lbf {

/// Sparse vector: (column, value) pairs with strictly increasing columns and
/// nonzero values.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// Row echelon form over Q built incrementally. Rows are kept primitive over
/// the integers and eliminated fraction-free; the pivot of a row is its
/// smallest column.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t ncols) : ncols_(ncols) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds a row; returns false when it was dependent on the rows so far.
  bool insert(const SparseVec& row);

  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivots() const;

  /// Fully reduced rows with pivot coefficient 1, keyed by pivot column.
  std::map<std::size_t, SparseVec> reduced() const;

  /// Basis of the null space {v : A v = 0}, one vector per free column, with
  /// that free column set to 1.
  std::vector<SparseVec> kernel() const;

 private:
  using IntRow = std::vector<std::pair<std::size_t, Integer>>;
  std::size_t ncols_;
  std::map<std::size_t, IntRow> rows_;
};

/// Solves A c = b for an m-column system given as sparse equations
/// (coefficients, right-hand side). Returns nullopt when inconsistent; free
/// unknowns are set to zero.
std::optional<std::vector<Rational>> solve_linear(const std::vector<std::pair<SparseVec, Rational>>& equations,
                                                  std::size_t unknowns);

}  // namespace lbf
