#pragma once

// Buchberger engine shared by the exact and modular drivers. A monomial is
// stored only as its order key: the components of the block order packed 16
// bits each, most significant first, so that comparing keys word by word
// compares terms and multiplying monomials adds keys. Polynomials are term
// vectors sorted by decreasing key; coefficients are either GMP integers
// (fraction-free, content removed) or Montgomery residues modulo a word prime.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <type_traits>
#include <vector>

#include "lbf/errors.hpp"
#include "lbf/groebner.hpp"

namespace lbf::engine {

struct ZArith {
  using C = Integer;
};

/// Arithmetic modulo an odd prime p < 2^62 in Montgomery form (R = 2^64).
struct PArith {
  using C = std::uint64_t;
  std::uint64_t p = 0;
  std::uint64_t pinv = 0;  // -p^{-1} mod R
  std::uint64_t r2 = 0;    // R^2 mod p
  std::uint64_t one = 0;   // R mod p

  PArith() = default;
  explicit PArith(std::uint64_t prime) : p(prime) {
    std::uint64_t inv = 1;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    pinv = 0 - inv;
    unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % p;
    one = static_cast<std::uint64_t>(r);
    r2 = static_cast<std::uint64_t>(r * r % p);
  }

  C redc(unsigned __int128 t) const {
    std::uint64_t m = static_cast<std::uint64_t>(t) * pinv;
    std::uint64_t u = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * p) >> 64);
    return u >= p ? u - p : u;
  }
  C mul(C a, C b) const { return redc(static_cast<unsigned __int128>(a) * b); }
  C add(C a, C b) const {
    C r = a + b;
    return r >= p ? r - p : r;
  }
  C sub(C a, C b) const { return a >= b ? a - b : a + (p - b); }
  C neg(C a) const { return a ? p - a : 0; }
  C from_ui(unsigned long v) const { return mul(v % p, r2); }
  /// Plain residue in [0, p).
  std::uint64_t to_ui(C a) const { return redc(a); }
  C inv(C a) const { return from_ui(plain_inverse(to_ui(a))); }
  std::uint64_t plain_inverse(std::uint64_t a) const {
    __int128 t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      __int128 q = r / nr;
      __int128 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
  }
  /// Residue of a rational; returns false when the denominator vanishes mod p.
  bool from_rational(const Rational& q, C& out) const {
    std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) return false;
    out = from_ui(static_cast<unsigned __int128>(num) * plain_inverse(den) % p);
    return true;
  }
};

template <std::size_t W>
struct Key {
  std::array<std::uint64_t, W> w{};
  friend bool operator==(const Key&, const Key&) = default;
};

template <std::size_t W>
class KeyMaker {
 public:
  using K = Key<W>;

  static std::size_t components(const MonomialOrder& ord) {
    std::size_t c = 0;
    for (const OrderBlock& b : ord.blocks()) c += b.vars.size() + (b.base == BaseOrder::Lex ? 0 : 1);
    return c;
  }

  explicit KeyMaker(const MonomialOrder& ord) : nvars_(ord.nvars()) {
    field_.assign(nvars_, 0);
    rev_.assign(nvars_, false);
    std::size_t f = 0;
    std::vector<std::vector<std::size_t>> degree_fields(nvars_);
    for (const OrderBlock& b : ord.blocks()) {
      if (b.base != BaseOrder::Lex) {
        for (std::size_t v : b.vars) degree_fields[v].push_back(f);
        ++f;
      }
      if (b.base == BaseOrder::DegRevLex) {
        for (auto it = b.vars.rbegin(); it != b.vars.rend(); ++it) {
          field_[*it] = f;
          rev_[*it] = true;
          set(offset_, f++, 0xffff);
        }
      } else {
        for (std::size_t v : b.vars) field_[v] = f++;
      }
    }
    if (f > 4 * W) throw StructuralError("monomial order too large for packed keys");
    pos_.resize(nvars_);
    neg_.resize(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) {
      for (std::size_t d : degree_fields[v]) set(pos_[v], d, 1);
      set(rev_[v] ? neg_[v] : pos_[v], field_[v], 1);
    }
  }

  std::size_t nvars() const { return nvars_; }

  K make(const Monomial& m) const {
    K k = offset_;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (m[v]) raise(k, v, m[v]);
    return k;
  }

  Monomial decode(const K& k) const {
    Monomial m(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) m.set(v, exp(k, v));
    return m;
  }

  unsigned exp(const K& k, std::size_t v) const {
    unsigned raw = get(k, field_[v]);
    return rev_[v] ? 0xffffu - raw : raw;
  }

  /// k * var^e; the caller guarantees no field overflows.
  void raise(K& k, std::size_t v, unsigned e) const {
    for (std::size_t i = 0; i < W; ++i) k.w[i] += e * pos_[v].w[i] - e * neg_[v].w[i];
  }
  /// k / var^e; requires var^e | k.
  void lower(K& k, std::size_t v, unsigned e) const {
    for (std::size_t i = 0; i < W; ++i) k.w[i] = k.w[i] - e * pos_[v].w[i] + e * neg_[v].w[i];
  }

  K mul(const K& a, const K& b) const {
    K k;
    for (std::size_t i = 0; i < W; ++i) k.w[i] = a.w[i] + b.w[i] - offset_.w[i];
    return k;
  }
  /// a / b; requires b | a.
  K quotient(const K& a, const K& b) const {
    K k;
    for (std::size_t i = 0; i < W; ++i) k.w[i] = a.w[i] - b.w[i] + offset_.w[i];
    return k;
  }
  bool divides(const K& a, const K& b) const {
    for (std::size_t v = 0; v < nvars_; ++v)
      if (exp(a, v) > exp(b, v)) return false;
    return true;
  }
  K lcm(const K& a, const K& b) const {
    K k = offset_;
    for (std::size_t v = 0; v < nvars_; ++v) {
      unsigned e = std::max(exp(a, v), exp(b, v));
      if (e) raise(k, v, e);
    }
    return k;
  }
  unsigned degree(const K& k) const {
    unsigned d = 0;
    for (std::size_t v = 0; v < nvars_; ++v) d += exp(k, v);
    return d;
  }
  bool is_one(const K& k) const { return k == offset_; }
  /// Bit v: exponent of v >= 1; bit v+16: exponent >= 2.
  std::uint32_t sev(const K& k) const {
    std::uint32_t bits = 0;
    for (std::size_t v = 0; v < nvars_; ++v) {
      unsigned e = exp(k, v);
      if (e > 0) bits |= 1u << v;
      if (e > 1) bits |= 1u << (v + 16);
    }
    return bits;
  }

  static int compare(const K& a, const K& b) {
    for (std::size_t i = 0; i < W; ++i)
      if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
    return 0;
  }

 private:
  static void set(K& k, std::size_t f, std::uint64_t v) { k.w[f / 4] |= v << (48 - 16 * (f % 4)); }
  static unsigned get(const K& k, std::size_t f) {
    return static_cast<unsigned>((k.w[f / 4] >> (48 - 16 * (f % 4))) & 0xffff);
  }

  std::size_t nvars_;
  std::vector<std::size_t> field_;
  std::vector<bool> rev_;
  K offset_{};
  std::vector<K> pos_, neg_;
};

template <class C, std::size_t W>
struct Term {
  Key<W> k;
  C c;
};

template <class C, std::size_t W>
struct Poly {
  std::vector<Term<C, W>> terms;
  unsigned sugar = 0;
  std::uint32_t support = 0;  // variables occurring anywhere
  std::uint32_t lsev = 0;     // of the leading monomial

  const Key<W>& lm() const { return terms.front().k; }
  const C& lc() const { return terms.front().c; }
};

template <std::size_t W>
struct Pair {
  std::size_t i, j;
  Key<W> lcm;
  unsigned sugar;
};

/// Replay data of one modular run: the pairs whose S-polynomials entered the
/// basis, and the leading monomials they produced.
template <std::size_t W>
struct Trace {
  struct Step {
    std::size_t i, j;  // basis indices; i == j marks an input polynomial
    Key<W> lm;
  };
  std::vector<Step> steps;
  std::vector<bool> active;
};

template <class Arith, std::size_t W>
class Engine {
 public:
  using C = typename Arith::C;
  using K = Key<W>;
  using P = Poly<C, W>;
  using T = Term<C, W>;
  static constexpr bool kExact = std::is_same_v<Arith, ZArith>;

  Engine(const MonomialOrder& ord, std::size_t n, const GroebnerOptions& opts, Arith arith = {})
      : ord_(ord), keys_(ord), n_(n), opts_(opts), ar_(arith) {}

  const KeyMaker<W>& keys() const { return keys_; }
  T term(const Monomial& m, C c) const { return T{keys_.make(m), std::move(c)}; }
  Monomial monomial(const K& k) const { return keys_.decode(k); }
  const Arith& arith() const { return ar_; }

  void refresh(P& p) const {
    p.support = 0;
    for (const T& t : p.terms) p.support |= keys_.sev(t.k) & 0xffffu;
    p.lsev = p.terms.empty() ? 0 : keys_.sev(p.lm());
  }

  void sort_terms(std::vector<T>& v) const {
    std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return KeyMaker<W>::compare(a.k, b.k) > 0; });
  }

  // Exact: divides by the content and returns it. Modular: makes monic.
  Integer remove_content(P& p) const {
    if (p.terms.empty()) return 1;
    if constexpr (kExact) {
      Integer g = p.terms.front().c;
      if (g < 0) g = -g;
      for (std::size_t k = 1; k < p.terms.size() && g != 1; ++k)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p.terms[k].c.get_mpz_t());
      if (g != 1)
        for (T& t : p.terms) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
      return g;
    } else {
      if (p.lc() != ar_.one) {
        C inv = ar_.inv(p.lc());
        for (T& t : p.terms) t.c = ar_.mul(t.c, inv);
      }
      return 1;
    }
  }

  // coef * m * g, canonical and sorted.
  std::vector<T> left_multiply(const K& m, const C& coef, const P& g) const {
    std::vector<T> out;
    out.reserve(g.terms.size());
    const std::size_t s = 2 * n_, dt = 2 * n_ + 1;
    // Monomial orders are multiplicative, so the leading parts keep g's order.
    for (const T& t : g.terms) out.push_back(T{keys_.mul(m, t.k), mul(coef, t.c)});

    unsigned beta[Monomial::kMaxVars];
    bool trivial = true;
    for (std::size_t i = 0; i < n_; ++i) {
      beta[i] = keys_.exp(m, n_ + i);
      if (beta[i] && (g.support & (1u << i))) trivial = false;
    }
    const unsigned k = keys_.exp(m, dt);
    if (k && (g.support & (1u << s))) trivial = false;
    if (trivial) return out;

    // Lower-order corrections: C(beta_i, v) (gamma_i)_v, and C(l, drop) (-k)^drop.
    std::vector<std::vector<C>> binom(n_);
    for (std::size_t i = 0; i < n_; ++i) binom[i] = binomial_row(beta[i]);
    std::vector<C> negk_pow{from_ui(1)};
    std::map<unsigned, std::vector<C>> srow_cache;

    std::vector<T> extra;
    unsigned overlap[Monomial::kMaxVars];
    unsigned nu[Monomial::kMaxVars];
    std::vector<C> falling[Monomial::kMaxVars];
    for (std::size_t idx = 0; idx < g.terms.size(); ++idx) {
      const T& t = g.terms[idx];
      const K& base = out[idx].k;
      const C& c0 = out[idx].c;
      bool any = false;
      for (std::size_t i = 0; i < n_; ++i) {
        overlap[i] = beta[i] ? std::min<unsigned>(beta[i], keys_.exp(t.k, i)) : 0;
        nu[i] = 0;
        if (overlap[i]) {
          any = true;
          unsigned gamma = keys_.exp(t.k, i);
          falling[i].resize(overlap[i] + 1);
          C fall = from_ui(1);
          falling[i][0] = fall;
          for (unsigned v = 1; v <= overlap[i]; ++v) {
            fall = mul(fall, from_ui(gamma - (v - 1)));
            falling[i][v] = mul(fall, binom[i][v]);
          }
        }
      }
      const unsigned l = k ? keys_.exp(t.k, s) : 0;
      if (!any && !l) continue;
      const std::vector<C>* srow = nullptr;
      if (l) {
        auto it = srow_cache.find(l);
        if (it == srow_cache.end()) {
          std::vector<C> row = binomial_row(l);
          while (negk_pow.size() <= l) negk_pow.push_back(mul(negk_pow.back(), neg(from_ui(k))));
          for (unsigned drop = 0; drop <= l; ++drop) row[drop] = mul(row[drop], negk_pow[drop]);
          it = srow_cache.emplace(l, std::move(row)).first;
        }
        srow = &it->second;
      }
      bool first = true;
      while (true) {
        C wc = c0;
        K mm = base;
        for (std::size_t i = 0; i < n_; ++i) {
          if (nu[i]) {
            wc = mul(wc, falling[i][nu[i]]);
            keys_.lower(mm, i, nu[i]);
            keys_.lower(mm, n_ + i, nu[i]);
          }
        }
        if (!srow) {
          if (!first) extra.push_back(T{mm, std::move(wc)});
        } else {
          for (unsigned drop = first ? 1 : 0; drop < srow->size(); ++drop) {
            K ms = mm;
            if (drop) keys_.lower(ms, s, drop);
            extra.push_back(T{ms, mul(wc, (*srow)[drop])});
          }
        }
        first = false;
        std::size_t i = 0;
        while (i < n_) {
          if (nu[i] < overlap[i]) {
            ++nu[i];
            break;
          }
          nu[i] = 0;
          ++i;
        }
        if (i == n_) break;
      }
    }
    if (extra.empty()) return out;
    sort_terms(extra);
    std::vector<T> merged;
    merged.reserve(out.size() + extra.size());
    std::size_t i = 0, j = 0;
    while (i < out.size() || j < extra.size()) {
      int cmp = i == out.size() ? -1 : j == extra.size() ? 1 : KeyMaker<W>::compare(out[i].k, extra[j].k);
      T t = cmp > 0 ? std::move(out[i++]) : std::move(extra[j++]);
      if (cmp == 0) t.c = add(t.c, out[i++].c);
      while (j < extra.size() && extra[j].k == t.k) t.c = add(t.c, extra[j++].c);
      if (!is_zero(t.c)) merged.push_back(std::move(t));
    }
    return merged;
  }

  // h[pos..] := a * h[pos..] - sub and h[..pos] *= a (a == nullptr means 1).
  void combine(P& h, std::size_t pos, const C* a, std::vector<T>& sub) const {
    std::vector<T> out;
    out.reserve(h.terms.size() + sub.size());
    auto scaled = [&](T&& t) {
      if (a) t.c = mul(t.c, *a);
      return std::move(t);
    };
    for (std::size_t k = 0; k < pos; ++k) out.push_back(scaled(std::move(h.terms[k])));
    std::size_t i = pos, j = 0;
    while (i < h.terms.size() && j < sub.size()) {
      int cmp = KeyMaker<W>::compare(h.terms[i].k, sub[j].k);
      if (cmp > 0) {
        out.push_back(scaled(std::move(h.terms[i++])));
      } else if (cmp < 0) {
        T t = std::move(sub[j++]);
        t.c = neg(t.c);
        out.push_back(std::move(t));
      } else {
        T t = scaled(std::move(h.terms[i++]));
        t.c = sub_(t.c, sub[j++].c);
        if (!is_zero(t.c)) out.push_back(std::move(t));
      }
    }
    for (; i < h.terms.size(); ++i) out.push_back(scaled(std::move(h.terms[i])));
    for (; j < sub.size(); ++j) {
      T t = std::move(sub[j]);
      t.c = neg(t.c);
      out.push_back(std::move(t));
    }
    h.terms = std::move(out);
  }

  const P* find_reducer(const K& m, const std::vector<P>& G) const {
    std::uint32_t bits = keys_.sev(m);
    const P* best = nullptr;
    for (const P& g : G) {
      if (g.terms.empty()) continue;
      if (g.lsev & ~bits) continue;
      if (!keys_.divides(g.lm(), m)) continue;
      if (!best || g.terms.size() < best->terms.size()) best = &g;
    }
    return best;
  }

  void check_limits(std::size_t size) {
    if (size > opts_.max_terms)
      throw ResourceError("operator support exceeded " + std::to_string(opts_.max_terms) + " terms",
                          stats.pairs_processed, basis_size, pairs_pending);
    if (opts_.max_work && stats.term_operations > opts_.max_work)
      throw WorkLimitError("term operation limit of " + std::to_string(opts_.max_work) + " exceeded",
                           stats.pairs_processed, basis_size, pairs_pending);
    if (opts_.deadline && (++tick_ & 7) == 0 && std::chrono::steady_clock::now() > *opts_.deadline)
      throw ResourceError("Gröbner basis deadline exceeded", stats.pairs_processed, basis_size, pairs_pending);
  }

  // Reduces h (top only unless `full`). Returns s with
  // h_new = s * h_old - (element of the ideal); s is 1 in the modular case.
  Rational reduce(P& h, const std::vector<P>& G, bool full) {
    if constexpr (!kExact) {
      reduce_bucketed(h, G, full);
      return 1;
    } else {
      Rational scale = 1;
      std::size_t pos = 0;
      while (pos < h.terms.size()) {
        const P* g = find_reducer(h.terms[pos].k, G);
        if (!g) {
          if (!full) break;
          ++pos;
          continue;
        }
        ++stats.reduction_steps;
        K m = keys_.quotient(h.terms[pos].k, g->lm());
        h.sugar = std::max(h.sugar, keys_.degree(m) + g->sugar);
        Integer gc;
        mpz_gcd(gc.get_mpz_t(), h.terms[pos].c.get_mpz_t(), g->lc().get_mpz_t());
        Integer a = g->lc() / gc;
        Integer b = h.terms[pos].c / gc;
        if (a < 0) {
          a = -a;
          b = -b;
        }
        std::vector<T> sub = left_multiply(m, b, *g);
        stats.term_operations += sub.size();
        combine(h, pos, a == 1 ? nullptr : &a, sub);
        scale *= a;
        Integer content = remove_content(h);
        if (content != 1) scale /= content;
        check_limits(h.terms.size());
      }
      refresh(h);
      return scale;
    }
  }

  // Geobucket: buckets hold ascending term vectors of bounded length, so the
  // cost of a reduction step is proportional to the reducer, not to h.
  class Bucket {
   public:
    explicit Bucket(const Engine& e) : e_(e) {}

    void add(std::vector<T>&& asc) {
      std::size_t i = 0;
      while (capacity(i) < asc.size()) ++i;
      if (buckets_.size() <= i) buckets_.resize(i + 1);
      buckets_[i] = merge(std::move(buckets_[i]), std::move(asc));
      while (buckets_[i].size() > capacity(i)) {
        if (buckets_.size() <= i + 1) buckets_.resize(i + 2);
        buckets_[i + 1] = merge(std::move(buckets_[i + 1]), std::move(buckets_[i]));
        buckets_[i].clear();
        ++i;
      }
    }

    /// Removes and returns the largest term; false when empty.
    bool pop_leading(T& out) {
      while (true) {
        int best = -1;
        for (std::size_t i = 0; i < buckets_.size(); ++i) {
          if (buckets_[i].empty()) continue;
          if (best < 0 || KeyMaker<W>::compare(buckets_[i].back().k, buckets_[best].back().k) > 0)
            best = static_cast<int>(i);
        }
        if (best < 0) return false;
        out = std::move(buckets_[best].back());
        buckets_[best].pop_back();
        for (std::size_t i = 0; i < buckets_.size(); ++i) {
          if (static_cast<int>(i) == best || buckets_[i].empty()) continue;
          if (buckets_[i].back().k == out.k) {
            out.c = e_.add(out.c, buckets_[i].back().c);
            buckets_[i].pop_back();
          }
        }
        if (out.c != 0) return true;
      }
    }

    /// Remaining terms in descending order.
    std::vector<T> drain() {
      std::vector<T> all;
      for (auto& b : buckets_) all = merge(std::move(all), std::move(b));
      buckets_.clear();
      std::reverse(all.begin(), all.end());
      return all;
    }

    std::size_t size() const {
      std::size_t n = 0;
      for (const auto& b : buckets_) n += b.size();
      return n;
    }

   private:
    static std::size_t capacity(std::size_t i) { return std::size_t(16) << (2 * i); }

    std::vector<T> merge(std::vector<T>&& a, std::vector<T>&& b) const {
      if (a.empty()) return std::move(b);
      if (b.empty()) return std::move(a);
      std::vector<T> out;
      out.reserve(a.size() + b.size());
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        int c = KeyMaker<W>::compare(a[i].k, b[j].k);
        if (c < 0) out.push_back(std::move(a[i++]));
        else if (c > 0) out.push_back(std::move(b[j++]));
        else {
          T t = std::move(a[i++]);
          t.c = e_.add(t.c, b[j++].c);
          if (t.c != 0) out.push_back(std::move(t));
        }
      }
      out.insert(out.end(), std::make_move_iterator(a.begin() + i), std::make_move_iterator(a.end()));
      out.insert(out.end(), std::make_move_iterator(b.begin() + j), std::make_move_iterator(b.end()));
      return out;
    }

    const Engine& e_;
    std::vector<std::vector<T>> buckets_;
  };

  void reduce_bucketed(P& h, const std::vector<P>& G, bool full) {
    if (h.terms.empty()) return;
    Bucket bucket(*this);
    std::vector<T> asc(std::make_move_iterator(h.terms.rbegin()), std::make_move_iterator(h.terms.rend()));
    bucket.add(std::move(asc));
    std::vector<T> done;
    T lead;
    bool stopped = false;
    while (bucket.pop_leading(lead)) {
      const P* g = find_reducer(lead.k, G);
      if (!g) {
        done.push_back(std::move(lead));
        if (!full) {
          stopped = true;
          break;
        }
        continue;
      }
      ++stats.reduction_steps;
      K m = keys_.quotient(lead.k, g->lm());
      h.sugar = std::max(h.sugar, keys_.degree(m) + g->sugar);
      std::vector<T> sub = left_multiply(m, ar_.neg(lead.c), *g);
      stats.term_operations += sub.size();
      // the leading term of sub cancels `lead` exactly (g is monic)
      std::vector<T> rest(std::make_move_iterator(sub.rbegin()), std::make_move_iterator(sub.rend() - 1));
      bucket.add(std::move(rest));
      if ((stats.reduction_steps & 63) == 0) check_limits(bucket.size());
    }
    if (stopped) {
      std::vector<T> tail = bucket.drain();
      for (T& t : tail) done.push_back(std::move(t));
    }
    h.terms = std::move(done);
    refresh(h);
  }

  P spoly(const P& f, const P& g, const K& lcm) const {
    P out;
    K mf = keys_.quotient(lcm, f.lm());
    K mg = keys_.quotient(lcm, g.lm());
    if constexpr (kExact) {
      Integer gc;
      mpz_gcd(gc.get_mpz_t(), f.lc().get_mpz_t(), g.lc().get_mpz_t());
      out.terms = left_multiply(mf, g.lc() / gc, f);
      std::vector<T> sub = left_multiply(mg, f.lc() / gc, g);
      combine(out, 0, nullptr, sub);
    } else {
      out.terms = left_multiply(mf, ar_.one, f);
      std::vector<T> sub = left_multiply(mg, ar_.one, g);
      combine(out, 0, nullptr, sub);
    }
    out.sugar = std::max(keys_.degree(mf) + f.sugar, keys_.degree(mg) + g.sugar);
    refresh(out);
    remove_content(out);
    return out;
  }

  bool pair_less(const Pair<W>& p, const Pair<W>& q) const {
    if (opts_.strategy == PairStrategy::Sugar && p.sugar != q.sugar) return p.sugar < q.sugar;
    int c = KeyMaker<W>::compare(p.lcm, q.lcm);
    if (c != 0) return c < 0;
    if (p.j != q.j) return p.j < q.j;
    return p.i < q.i;
  }

  // Gebauer–Möller update after appending G[k]; chain criteria only.
  void update(std::vector<Pair<W>>& B, const std::vector<P>& G, std::vector<bool>& active, std::size_t k) {
    const K& lk = G[k].lm();
    std::vector<Pair<W>> Cand;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      K l = keys_.lcm(G[i].lm(), lk);
      unsigned dl = keys_.degree(l);
      unsigned sg = std::max(dl - keys_.degree(G[i].lm()) + G[i].sugar, dl - keys_.degree(lk) + G[k].sugar);
      Cand.push_back({i, k, l, sg});
    }
    std::vector<Pair<W>> D;
    for (std::size_t p = 0; p < Cand.size(); ++p) {
      bool drop = false;
      for (std::size_t q = p + 1; q < Cand.size() && !drop; ++q)
        if (keys_.divides(Cand[q].lcm, Cand[p].lcm)) drop = true;
      for (std::size_t q = 0; q < D.size() && !drop; ++q)
        if (keys_.divides(D[q].lcm, Cand[p].lcm)) drop = true;
      if (drop) ++stats.pairs_discarded;
      else D.push_back(Cand[p]);
    }
    std::size_t before = B.size();
    std::erase_if(B, [&](const Pair<W>& p) {
      if (!keys_.divides(lk, p.lcm)) return false;
      return !(keys_.lcm(G[p.i].lm(), lk) == p.lcm) && !(keys_.lcm(G[p.j].lm(), lk) == p.lcm);
    });
    stats.pairs_discarded += before - B.size();
    for (Pair<W>& p : D) B.push_back(std::move(p));
    for (std::size_t i = 0; i < k; ++i)
      if (active[i] && keys_.divides(lk, G[i].lm())) active[i] = false;
    active.push_back(true);
  }

  /// Runs the Buchberger loop on prepared inputs. Returns the reduced basis
  /// sorted by increasing leading monomial; a basis {1} is returned as a
  /// single constant polynomial. With `record`, the useful steps are stored;
  /// with `replay`, only those steps are redone and std::nullopt signals that
  /// this prime does not follow the trace.
  std::optional<std::vector<P>> run(std::vector<P> inputs, Trace<W>* record = nullptr,
                                    const Trace<W>* replay = nullptr) {
    std::vector<P> G;
    std::vector<bool> active;
    std::vector<Pair<W>> B;
    auto unit = [&]() {
      P one;
      one.terms.push_back(term(Monomial(ord_.nvars()), from_ui(1)));
      refresh(one);
      return std::vector<P>{one};
    };
    auto normalize = [&](P& h) {
      if constexpr (kExact) {
        if (h.lc() < 0)
          for (T& t : h.terms) t.c = -t.c;
      } else {
        remove_content(h);
      }
    };

    std::sort(inputs.begin(), inputs.end(),
              [&](const P& a, const P& b) { return KeyMaker<W>::compare(a.lm(), b.lm()) < 0; });
    if (replay) {
      std::size_t next_input = 0;
      for (const auto& step : replay->steps) {
        P h;
        if (step.i == step.j) {
          // inputs that reduced to zero were not recorded; skip them likewise
          while (true) {
            if (next_input >= inputs.size()) return std::nullopt;
            h = std::move(inputs[next_input++]);
            reduce(h, G, false);
            if (!h.terms.empty()) break;
          }
        } else {
          ++stats.pairs_processed;
          if (step.i >= G.size() || step.j >= G.size()) return std::nullopt;
          h = spoly(G[step.i], G[step.j], keys_.lcm(G[step.i].lm(), G[step.j].lm()));
          reduce(h, G, false);
        }
        if (h.terms.empty() || !(h.lm() == step.lm)) return std::nullopt;
        if (keys_.is_one(h.lm())) return unit();
        normalize(h);
        G.push_back(std::move(h));
        basis_size = G.size();
      }
      active = replay->active;
      if (active.size() != G.size()) return std::nullopt;
    } else {
      auto insert = [&](P&& h, std::size_t i, std::size_t j) -> bool {
        if (h.terms.empty()) {
          ++stats.zero_reductions;
          return false;
        }
        if (record) record->steps.push_back({i, j, h.lm()});
        if (keys_.is_one(h.lm())) return true;
        normalize(h);
        G.push_back(std::move(h));
        update(B, G, active, G.size() - 1);
        basis_size = G.size();
        return false;
      };
      for (P& p : inputs) {
        reduce(p, G, false);
        if (insert(std::move(p), 0, 0)) return unit();
      }
      while (!B.empty()) {
        auto it = std::min_element(B.begin(), B.end(), [&](const Pair<W>& p, const Pair<W>& q) { return pair_less(p, q); });
        Pair<W> pr = std::move(*it);
        B.erase(it);
        ++stats.pairs_processed;
        pairs_pending = B.size();
        if (stats.pairs_processed > opts_.max_pairs)
          throw ResourceError("pair limit of " + std::to_string(opts_.max_pairs) + " exceeded",
                              stats.pairs_processed, G.size(), B.size());
        P sp = spoly(G[pr.i], G[pr.j], pr.lcm);
        check_limits(sp.terms.size());
        reduce(sp, G, false);
        if (insert(std::move(sp), pr.i, pr.j)) return unit();
      }
      if (record) record->active = active;
    }

    std::vector<P> minimal;
    for (std::size_t i = 0; i < G.size(); ++i)
      if (active[i]) minimal.push_back(std::move(G[i]));
    std::sort(minimal.begin(), minimal.end(),
              [&](const P& a, const P& b) { return KeyMaker<W>::compare(a.lm(), b.lm()) < 0; });
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      T head = std::move(minimal[i].terms.front());
      P tail;
      tail.terms.assign(std::make_move_iterator(minimal[i].terms.begin() + 1),
                        std::make_move_iterator(minimal[i].terms.end()));
      refresh(tail);
      std::vector<P> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Rational scale = reduce(tail, others, true);
      P rebuilt;
      if constexpr (kExact) {
        Integer num = scale.get_num(), den = scale.get_den();
        rebuilt.terms.push_back({head.k, head.c * num});
        for (T& t : tail.terms) rebuilt.terms.push_back({t.k, t.c * den});
      } else {
        rebuilt.terms.push_back(std::move(head));
        for (T& t : tail.terms) rebuilt.terms.push_back(std::move(t));
      }
      refresh(rebuilt);
      remove_content(rebuilt);
      rebuilt.sugar = minimal[i].sugar;
      minimal[i] = std::move(rebuilt);
    }
    return minimal;
  }

  GroebnerStats stats;
  std::size_t basis_size = 0;
  std::size_t pairs_pending = 0;

  C add(const C& a, const C& b) const {
    if constexpr (kExact) return a + b;
    else return ar_.add(a, b);
  }

 private:
  C mul(const C& a, const C& b) const {
    if constexpr (kExact) return a * b;
    else return ar_.mul(a, b);
  }
  C sub_(const C& a, const C& b) const {
    if constexpr (kExact) return a - b;
    else return ar_.sub(a, b);
  }
  C neg(const C& a) const {
    if constexpr (kExact) return -a;
    else return ar_.neg(a);
  }
  C from_ui(unsigned long v) const {
    if constexpr (kExact) return C(v);
    else return ar_.from_ui(v);
  }
  static bool is_zero(const C& c) { return c == 0; }

  std::vector<C> binomial_row(unsigned b) const {
    std::vector<C> row(b + 1);
    Integer z;
    for (unsigned v = 0; v <= b; ++v) {
      mpz_bin_uiui(z.get_mpz_t(), b, v);
      if constexpr (kExact) row[v] = z;
      else row[v] = ar_.from_ui(mpz_fdiv_ui(z.get_mpz_t(), ar_.p));
    }
    return row;
  }

  const MonomialOrder& ord_;
  KeyMaker<W> keys_;
  std::size_t n_;
  GroebnerOptions opts_;
  Arith ar_;
  unsigned tick_ = 0;
};

}  // namespace lbf::engine
