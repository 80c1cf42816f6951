#include "lbf/unipoly.hpp"

#include <algorithm>

#include "lbf/errors.hpp"

namespace lbf {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly UniPoly::monomial(unsigned k, const Rational& c) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading());
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(r));
}

UniPoly operator*(UniPoly a, const Rational& c) {
  for (auto& x : a.coeffs_) x *= c;
  a.trim();
  return a;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool leading_term = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (c < 0) out += "-";
    else if (!leading_term) out += "+";
    if (k == 0 || mag != 1) {
      out += lbf::to_string(mag);
      if (k > 0) out += "*";
    }
    if (k > 0) out += var;
    if (k > 1) out += "^" + std::to_string(k);
    leading_term = false;
  }
  return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw ArithmeticError("division by the zero polynomial");
  std::vector<Rational> rem = a.coefficients();
  const auto& bc = b.coefficients();
  int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  Rational lead_inv = Rational(1) / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational q = rem[static_cast<std::size_t>(k)] * lead_inv;
    if (q == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly exact_divide_unipoly(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw ArithmeticError("inexact polynomial division");
  return q;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

RootList::RootList(std::vector<Rational> r) : roots(std::move(r)) {
  std::sort(roots.begin(), roots.end());
}

bool RootList::contains(const Rational& r) const {
  return std::binary_search(roots.begin(), roots.end(), r);
}

std::size_t RootList::multiplicity(const Rational& r) const {
  auto [lo, hi] = std::equal_range(roots.begin(), roots.end(), r);
  return static_cast<std::size_t>(hi - lo);
}

bool RootList::is_set() const { return std::adjacent_find(roots.begin(), roots.end()) == roots.end(); }

RootList RootList::as_set() const {
  std::vector<Rational> r = roots;
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return RootList(std::move(r));
}

RootList RootList::without(const RootList& other) const {
  std::vector<Rational> out;
  std::set_difference(roots.begin(), roots.end(), other.roots.begin(), other.roots.end(),
                      std::back_inserter(out));
  return RootList(std::move(out));
}

UniPoly RootList::to_polynomial() const {
  UniPoly p({Rational(1)});
  for (const Rational& r : roots) p = p * UniPoly({-r, Rational(1)});
  return p;
}

std::string RootList::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i) out += ", ";
    out += lbf::to_string(roots[i]);
  }
  return out + "}";
}

namespace {

int sign_of(const Rational& r) { return sgn(r); }

struct SturmChain {
  std::vector<UniPoly> chain;

  explicit SturmChain(const UniPoly& p) {
    auto normalize = [](const UniPoly& q) { return q * (Rational(1) / abs(q.leading())); };
    chain.push_back(normalize(p));
    UniPoly d = p.derivative();
    if (d.is_zero()) return;
    chain.push_back(normalize(d));
    while (true) {
      UniPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
      if (r.is_zero()) break;
      chain.push_back(normalize(r * Rational(-1)));
    }
  }

  int variations(const Rational& x) const {
    int count = 0;
    int prev = 0;
    for (const UniPoly& q : chain) {
      int s = sign_of(q.evaluate(x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }
};

Rational floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

/// Rational with the smallest denominator in the closed interval [a, b].
Rational simplest_between(const Rational& a, const Rational& b) {
  if (a <= 0 && b >= 0) return 0;
  if (b < 0) return -simplest_between(-b, -a);
  Rational fl = floor_of(a);
  if (fl == a) return a;
  if (fl + 1 <= b) return fl + 1;
  return fl + Rational(1) / simplest_between(Rational(1) / (b - fl), Rational(1) / (a - fl));
}

}  // namespace

RootList rational_roots(const UniPoly& b) {
  if (b.is_zero()) throw PreconditionError("rational_roots of the zero polynomial");
  if (b.degree() == 0) return {};

  UniPoly sqf = exact_divide_unipoly(b, gcd(b, b.derivative())).monic();

  // Denominators of rational roots of the primitive integer form divide its
  // leading coefficient; this bounds how fine the search must get.
  Integer common_den = 1;
  for (const Rational& c : sqf.coefficients()) mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), c.get_den_mpz_t());
  Integer content = 0;
  for (const Rational& c : sqf.coefficients()) {
    Integer v = c.get_num() * (common_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  Integer lead_int = common_den / content;  // sqf is monic
  Rational min_width = Rational(1) / (Rational(lead_int) * lead_int * 4);

  Rational bound = 1;
  for (const Rational& c : sqf.coefficients()) bound = std::max(bound, Rational(1 + abs(c)));

  SturmChain sturm(sqf);
  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    int count = sturm.variations(lo) - sturm.variations(hi);
    if (count == 0) continue;
    if (count == 1) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    work.emplace_back(lo, mid);
    work.emplace_back(mid, hi);
  }

  std::vector<Rational> found;
  for (auto [lo, hi] : isolated) {
    // Exactly one simple root in (lo, hi].
    while (true) {
      if (sqf.evaluate(hi) == 0) {
        found.push_back(hi);
        break;
      }
      Rational guess = simplest_between(lo, hi);
      if (guess != lo && sqf.evaluate(guess) == 0) {
        found.push_back(guess);
        break;
      }
      if (hi - lo < min_width) {
        throw InconsistencyError("polynomial " + b.to_string("s") + " has an irrational real root");
      }
      Rational mid = (lo + hi) / 2;
      if (sturm.variations(lo) - sturm.variations(mid) == 1) hi = mid;
      else lo = mid;
    }
  }

  std::vector<Rational> roots;
  UniPoly rest = b;
  for (const Rational& r : found) {
    UniPoly factor({-r, Rational(1)});
    while (true) {
      auto [q, rem] = divmod(rest, factor);
      if (!rem.is_zero()) break;
      roots.push_back(r);
      rest = q;
    }
  }
  if (rest.degree() > 0) {
    throw InconsistencyError("polynomial " + b.to_string("s") + " does not split into rational linear factors");
  }
  return RootList(std::move(roots));
}

}  // namespace lbf
