#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lbf {

/// Exponent vector x^a = x_1^{a_1} ... x_n^{a_n}. The length is fixed by the
/// ring the monomial belongs to; at most kMaxVars variables are supported.
class Monomial {
 public:
  using Exponent = std::uint16_t;
  static constexpr std::size_t kMaxVars = 16;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<unsigned> exponents);
  explicit Monomial(std::span<const unsigned> exponents);

  std::size_t size() const { return size_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned value);

  unsigned degree() const;
  bool is_one() const;

  /// True when *this divides `other` componentwise.
  bool divides(const Monomial& other) const;

  /// Componentwise max / min / difference (the latter requires divisibility).
  Monomial lcm(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  Monomial quotient(const Monomial& divisor) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);

  /// Raw lexicographic comparison on the exponent array. This is only a
  /// container key order, not a term order; see MonomialOrder.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVars> exps_{};
  std::uint8_t size_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class BaseOrder { DegLex, DegRevLex, Lex };

/// One block of a block order. `vars` lists variable indices by decreasing
/// priority: for DegLex/Lex the first entry is the largest variable, for
/// DegRevLex ties are broken from the last entry backwards.
struct OrderBlock {
  std::vector<std::size_t> vars;
  BaseOrder base = BaseOrder::DegLex;
};

/// Block term order: earlier blocks dominate later ones.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(std::size_t nvars, std::vector<OrderBlock> blocks);

  static MonomialOrder deglex(std::size_t nvars);
  static MonomialOrder degrevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);

  /// Compact textual form, e.g. "dx,dy:dlex >> y,x:dlex >> s". Variables of a
  /// block are listed by decreasing priority; the base order is one of
  /// dlex, drl, lex (default dlex). Names absent from the spec that appear
  /// in `implicit_top` are placed in a leading block of their own.
  static MonomialOrder parse(std::string_view spec, std::span<const std::string> names,
                             std::span<const std::string> implicit_top = {});

  std::size_t nvars() const { return nvars_; }
  const std::vector<OrderBlock>& blocks() const { return blocks_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  /// True when every variable of `eliminated` sits in a block strictly
  /// before every other variable's block.
  bool eliminates(std::span<const std::size_t> eliminated) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<OrderBlock> blocks_;
  std::vector<std::size_t> block_of_;
};

std::strong_ordering compare(const Monomial& a, const Monomial& b, const MonomialOrder& order);

}  // namespace lbf
