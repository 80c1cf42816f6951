#include "lbf/pbw.hpp"

#include <algorithm>
#include <unordered_map>

#include "lbf/errors.hpp"

namespace lbf {

PBWRing::PBWRing(std::vector<std::string> xnames) : xnames_(std::move(xnames)) {
  if (xnames_.empty()) throw PreconditionError("PBW ring needs at least one variable");
  if (2 * xnames_.size() + 2 > Monomial::kMaxVars)
    throw PreconditionError("too many variables for the PBW ring");
  names_ = xnames_;
  for (const auto& v : xnames_) names_.push_back("d" + v);
  names_.push_back("s");
  names_.push_back("dt");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw PreconditionError("variable name '" + names_[i] + "' clashes");
}

PBWRingPtr make_pbw_ring(std::vector<std::string> xnames) {
  return std::make_shared<const PBWRing>(std::move(xnames));
}

PBWOperator::PBWOperator(PBWRingPtr ring) : ring_(std::move(ring)) {}

PBWOperator PBWOperator::constant(PBWRingPtr ring, const Rational& c) {
  PBWOperator r(ring);
  r.add_term(Monomial(ring->nvars()), c);
  return r;
}

PBWOperator PBWOperator::generator(PBWRingPtr ring, std::size_t var) {
  if (var >= ring->nvars()) throw StructuralError("generator index out of range");
  Monomial m(ring->nvars());
  m.set(var, 1);
  return term(std::move(ring), m, 1);
}

PBWOperator PBWOperator::term(PBWRingPtr ring, const Monomial& m, const Rational& c) {
  if (m.size() != ring->nvars()) throw StructuralError("monomial length differs from the PBW ring");
  PBWOperator r(std::move(ring));
  r.add_term(m, c);
  return r;
}

PBWOperator PBWOperator::from_poly(PBWRingPtr ring, const MultiPoly& p) {
  MultiPoly q = p.rename_vars(ring->xnames());
  PBWOperator r(ring);
  for (const auto& [m, c] : q.terms()) {
    Monomial big(ring->nvars());
    for (std::size_t i = 0; i < ring->n(); ++i) big.set(i, m[i]);
    r.add_term(big, c);
  }
  return r;
}

PBWOperator PBWOperator::from_s_poly(PBWRingPtr ring, const UniPoly& p) {
  PBWOperator r(ring);
  const auto& cs = p.coefficients();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    Monomial m(ring->nvars());
    m.set(ring->s(), static_cast<unsigned>(k));
    r.add_term(m, cs[k]);
  }
  return r;
}

bool PBWOperator::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool PBWOperator::avoids(std::span<const std::size_t> vars) const {
  for (const auto& [m, c] : terms_)
    for (std::size_t v : vars)
      if (m[v] != 0) return false;
  return true;
}

bool PBWOperator::in_Ds() const {
  if (!ring_) return true;
  std::size_t v[] = {ring_->dt()};
  return avoids(v);
}

bool PBWOperator::in_D() const {
  if (!ring_) return true;
  std::size_t v[] = {ring_->s(), ring_->dt()};
  return avoids(v);
}

bool PBWOperator::in_Cx() const {
  if (!ring_) return true;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = ring_->n(); i < ring_->nvars(); ++i)
      if (m[i] != 0) return false;
  return true;
}

bool PBWOperator::in_Cs() const {
  if (!ring_) return true;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (i != ring_->s() && m[i] != 0) return false;
  return true;
}

void PBWOperator::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void PBWOperator::check_ring(const PBWOperator& o) const {
  if (ring_ && o.ring_ && ring_ != o.ring_ && !(*ring_ == *o.ring_))
    throw StructuralError("operators belong to different rings");
}

PBWOperator& PBWOperator::operator+=(const PBWOperator& o) {
  check_ring(o);
  if (!ring_) ring_ = o.ring_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PBWOperator& PBWOperator::operator-=(const PBWOperator& o) {
  check_ring(o);
  if (!ring_) ring_ = o.ring_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PBWOperator& PBWOperator::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

PBWOperator operator*(const PBWOperator& a, const PBWOperator& b) { return pbw_multiply(a, b); }

bool operator==(const PBWOperator& a, const PBWOperator& b) {
  if (a.terms_ != b.terms_) return false;
  if (a.terms_.empty()) return true;
  return a.ring_ == b.ring_ || (a.ring_ && b.ring_ && *a.ring_ == *b.ring_);
}

PBWOperator pbw_multiply(const PBWOperator& a, const PBWOperator& b) {
  a.check_ring(b);
  PBWOperator r(a.ring() ? a.ring() : b.ring());
  if (a.is_zero() || b.is_zero()) return r;
  const std::size_t n = r.ring()->n();
  Rational tmp;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Rational cab = ca * cb;
      detail::multiply_pbw_monomials(n, ma, mb, [&](const Monomial& m, const Integer& c) {
        tmp = cab * c;
        r.add_term(m, tmp);
      });
    }
  }
  return r;
}

PBWOperator PBWOperator::substitute_s(const Rational& value) const {
  PBWOperator r(ring_);
  if (!ring_) return r;
  for (const auto& [m, c] : terms_) {
    Monomial k = m;
    unsigned e = m[ring_->s()];
    k.set(ring_->s(), 0);
    Rational p;
    mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), e);
    mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), e);
    r.add_term(k, c * p);
  }
  return r;
}

MultiPoly PBWOperator::to_x_poly() const {
  if (!in_Cx()) throw PreconditionError("operator is not a polynomial in x");
  MultiPoly p(ring_ ? ring_->xnames() : std::vector<std::string>{});
  for (const auto& [m, c] : terms_) {
    Monomial small(ring_->n());
    for (std::size_t i = 0; i < ring_->n(); ++i) small.set(i, m[i]);
    p.add_term(small, c);
  }
  return p;
}

UniPoly PBWOperator::to_s_poly() const {
  if (!in_Cs()) throw PreconditionError("operator is not a polynomial in s");
  std::vector<Rational> cs;
  for (const auto& [m, c] : terms_) {
    unsigned k = m[ring_->s()];
    if (cs.size() <= k) cs.resize(k + 1, Rational(0));
    cs[k] = c;
  }
  return UniPoly(std::move(cs));
}

std::string PBWOperator::to_string() const {
  if (terms_.empty()) return "0";
  MonomialOrder order = MonomialOrder::deglex(ring_->nvars());
  std::vector<const TermMap::value_type*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) { return order.greater(a->first, b->first); });
  std::string out;
  bool leading = true;
  for (const auto* t : sorted) {
    out += format_term(t->second, t->first, ring_->names(), leading);
    leading = false;
  }
  return out;
}

// ---- action on f^s --------------------------------------------------------

namespace {

struct FsContext {
  std::vector<std::string> names;  // x..., s
  std::size_t n;
  MultiPoly f;
  std::vector<MultiPoly> df;
  MultiPoly s;

  FsContext(const PBWRing& ring, const MultiPoly& poly) : n(ring.n()) {
    names = ring.xnames();
    names.push_back("s");
    f = poly.rename_vars(names);
    for (std::size_t i = 0; i < n; ++i) df.push_back(f.derivative(i));
    s = MultiPoly::variable(names, n);
  }

  // d_i (h f^{s-m}) = (f d_i h + (s-m) h d_i f) f^{s-m-1}
  FsImage differentiate(const FsImage& img, std::size_t i) const {
    MultiPoly sm = s - MultiPoly::constant(names, Rational(img.shift));
    FsImage out{f * img.numerator.derivative(i) + sm * img.numerator * df[i], img.shift + 1};
    return out;
  }

  MultiPoly lift(const FsImage& img, unsigned target) const {
    return img.numerator * f.pow(target - img.shift);
  }
};

FsImage apply_impl(const PBWOperator& p, const FsImage& start, const FsContext& ctx) {
  const PBWRing& ring = *p.ring();
  if (!p.in_Ds()) throw PreconditionError("apply_to_fs: operator involves dt");
  if (p.is_zero()) return FsImage{MultiPoly(ctx.names), start.shift};

  // Memoize d^beta applied to the start image.
  std::map<std::vector<unsigned>, FsImage> cache;
  std::vector<unsigned> zero(ctx.n, 0);
  cache.emplace(zero, start);
  auto derived = [&](const std::vector<unsigned>& beta) -> const FsImage& {
    // Walk from the cached prefix: raise components left to right.
    std::vector<unsigned> cur(ctx.n, 0);
    const FsImage* img = &cache.at(zero);
    for (std::size_t i = 0; i < ctx.n; ++i) {
      while (cur[i] < beta[i]) {
        ++cur[i];
        auto it = cache.find(cur);
        if (it == cache.end()) it = cache.emplace(cur, ctx.differentiate(*img, i)).first;
        img = &it->second;
      }
    }
    return *img;
  };

  std::vector<std::pair<MultiPoly, unsigned>> parts;
  unsigned top = start.shift;
  for (const auto& [m, c] : p.terms()) {
    std::vector<unsigned> beta(ctx.n);
    for (std::size_t i = 0; i < ctx.n; ++i) beta[i] = m[ring.d(i)];
    const FsImage& img = derived(beta);
    Monomial xs(ctx.n + 1);
    for (std::size_t i = 0; i < ctx.n; ++i) xs.set(i, m[ring.x(i)]);
    xs.set(ctx.n, m[ring.s()]);
    MultiPoly factor = MultiPoly::term(ctx.names, xs, c);
    parts.emplace_back(factor * img.numerator, img.shift);
    top = std::max(top, img.shift);
  }
  FsImage out{MultiPoly(ctx.names), top};
  for (auto& [num, shift] : parts) out.numerator += num * ctx.f.pow(top - shift);
  return out;
}

}  // namespace

FsImage apply_to_fs(const PBWOperator& p, const MultiPoly& f) {
  if (f.is_zero()) throw PreconditionError("apply_to_fs: f is zero");
  if (!p.ring()) return FsImage{};
  FsContext ctx(*p.ring(), f);
  return apply_impl(p, FsImage{MultiPoly::constant(ctx.names, 1), 0}, ctx);
}

FsImage apply_to_fs(const PBWOperator& p, const FsImage& image, const MultiPoly& f) {
  if (f.is_zero()) throw PreconditionError("apply_to_fs: f is zero");
  if (!p.ring()) return FsImage{};
  FsContext ctx(*p.ring(), f);
  FsImage start{image.numerator.rename_vars(ctx.names), image.shift};
  return apply_impl(p, start, ctx);
}

MultiPoly fs_difference(const FsImage& a, const FsImage& b, const MultiPoly& f) {
  const std::vector<std::string>& names = !a.numerator.vars().empty() ? a.numerator.vars() : b.numerator.vars();
  MultiPoly fr = f.rename_vars(names);
  unsigned top = std::max(a.shift, b.shift);
  return a.numerator.rename_vars(names) * fr.pow(top - a.shift) - b.numerator.rename_vars(names) * fr.pow(top - b.shift);
}

}  // namespace lbf
