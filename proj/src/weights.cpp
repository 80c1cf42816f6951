#include "lbf/weights.hpp"

#include <algorithm>
#include <numeric>

#include "lbf/errors.hpp"

namespace lbf {

WeightSystem::WeightSystem(long degree, std::vector<long> weights) : d(degree), w(std::move(weights)) {
  if (w.empty()) throw PreconditionError("weight system without weights");
  for (long wi : w)
    if (wi < 1) throw PreconditionError("weights must be positive");
  if (d < *std::max_element(w.begin(), w.end()))
    throw PreconditionError("weighted degree must be at least every weight");
}

long WeightSystem::weight_sum() const { return std::accumulate(w.begin(), w.end(), 0L); }

std::string WeightSystem::to_string() const {
  std::string out = "(" + std::to_string(d) + ";";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out + ")";
}

long weighted_degree(const Monomial& m, const WeightSystem& ws) {
  if (m.size() != ws.w.size()) throw StructuralError("monomial and weight vector lengths differ");
  long total = 0;
  for (std::size_t i = 0; i < m.size(); ++i) total += ws.w[i] * static_cast<long>(m[i]);
  return total;
}

SwhSplit classify_swh(const MultiPoly& f, const WeightSystem& ws) {
  if (f.is_zero()) throw PreconditionError("classify_swh: f is zero");
  if (f.constant_term() != 0) throw PreconditionError("classify_swh: f does not vanish at the origin");
  if (f.nvars() != ws.w.size()) throw StructuralError("weight vector length differs from variable count");
  SwhSplit out{MultiPoly(f.vars()), MultiPoly(f.vars()), true};
  for (const auto& [m, c] : f.terms()) {
    long deg = weighted_degree(m, ws);
    if (deg == ws.d) {
      out.f0.add_term(m, c);
    } else {
      out.g.add_term(m, c);
      if (deg < ws.d) out.ok = false;
    }
  }
  if (out.f0.is_zero()) out.ok = false;
  return out;
}

}  // namespace lbf
