#include "lbf/linalg.hpp"

#include <algorithm>

#include "lbf/errors.hpp"

namespace lbf {

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(IntRow& r) {
  if (r.empty()) return;
  Integer g = abs(r.front().second);
  for (std::size_t k = 1; k < r.size() && g != 1; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[k].second.get_mpz_t());
  if (r.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// r := a*r - b*p with a, b chosen so the entry at column `col` cancels.
IntRow eliminate(const IntRow& r, const IntRow& p, std::size_t col) {
  auto find = [col](const IntRow& x) -> const Integer& {
    auto it = std::lower_bound(x.begin(), x.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
    return it->second;
  };
  const Integer& rv = find(r);
  const Integer& pv = find(p);
  Integer g;
  mpz_gcd(g.get_mpz_t(), rv.get_mpz_t(), pv.get_mpz_t());
  Integer a = pv / g, b = rv / g;
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -b * p[j].second);
      ++j;
    } else {
      Integer v = a * r[i].second - b * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

}  // namespace

bool SparseEchelon::insert(const SparseVec& row) {
  Integer den = 1;
  for (const auto& [c, v] : row) {
    if (c >= ncols_) throw StructuralError("SparseEchelon: column out of range");
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  }
  IntRow r;
  for (const auto& [c, v] : row)
    if (v != 0) r.emplace_back(c, v.get_num() * (den / v.get_den()));
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  make_primitive(r);
  while (!r.empty()) {
    auto it = rows_.find(r.front().first);
    if (it == rows_.end()) {
      rows_.emplace(r.front().first, std::move(r));
      return true;
    }
    r = eliminate(r, it->second, r.front().first);
  }
  return false;
}

std::vector<std::size_t> SparseEchelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [c, r] : rows_) out.push_back(c);
  return out;
}

std::map<std::size_t, SparseVec> SparseEchelon::reduced() const {
  // Back substitution from the largest pivot down, over Q.
  std::map<std::size_t, SparseVec> out;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    std::map<std::size_t, Rational> acc;
    Rational lead(it->second.front().second);
    for (const auto& [c, v] : it->second) acc[c] = Rational(v) / lead;
    for (auto& [pc, prow] : out) {
      auto e = acc.find(pc);
      if (e == acc.end() || pc == it->first) continue;
      Rational factor = e->second;
      for (const auto& [c, v] : prow) {
        Rational& slot = acc[c];
        slot -= factor * v;
      }
    }
    SparseVec row;
    for (auto& [c, v] : acc)
      if (v != 0) row.emplace_back(c, v);
    out.emplace(it->first, std::move(row));
  }
  return out;
}

std::vector<SparseVec> SparseEchelon::kernel() const {
  auto red = reduced();
  std::vector<SparseVec> out;
  for (std::size_t j = 0; j < ncols_; ++j) {
    if (red.count(j)) continue;
    std::map<std::size_t, Rational> v;
    v[j] = 1;
    for (const auto& [pc, row] : red) {
      auto e = std::lower_bound(row.begin(), row.end(), j, [](const auto& x, std::size_t c) { return x.first < c; });
      if (e != row.end() && e->first == j) v[pc] = -e->second;
    }
    SparseVec sv(v.begin(), v.end());
    out.push_back(std::move(sv));
  }
  return out;
}

std::optional<std::vector<Rational>> solve_linear(const std::vector<std::pair<SparseVec, Rational>>& equations,
                                                  std::size_t unknowns) {
  // The right-hand side becomes column `unknowns` of the augmented matrix.
  SparseEchelon ech(unknowns + 1);
  for (const auto& [coeffs, rhs] : equations) {
    SparseVec row = coeffs;
    if (rhs != 0) row.emplace_back(unknowns, rhs);
    ech.insert(row);
  }
  auto red = ech.reduced();
  if (red.count(unknowns)) return std::nullopt;
  std::vector<Rational> sol(unknowns, Rational(0));
  for (const auto& [pc, row] : red)
    for (const auto& [c, v] : row)
      if (c == unknowns) sol[pc] = v;
  return sol;
}

}  // namespace lbf
