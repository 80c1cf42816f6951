#include "lbf/monomial.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "lbf/errors.hpp"

namespace lbf {

namespace {

Monomial::Exponent checked_exponent(unsigned long v) {
  if (v > std::numeric_limits<Monomial::Exponent>::max()) {
    throw ArithmeticError("monomial exponent overflow");
  }
  return static_cast<Monomial::Exponent>(v);
}

void check_same_size(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw StructuralError("monomials from different rings");
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Monomial::Monomial(std::size_t nvars) {
  if (nvars > kMaxVars) throw StructuralError("too many variables");
  size_ = static_cast<std::uint8_t>(nvars);
}

Monomial::Monomial(std::initializer_list<unsigned> exponents)
    : Monomial(std::span<const unsigned>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const unsigned> exponents) : Monomial(exponents.size()) {
  for (std::size_t i = 0; i < exponents.size(); ++i) exps_[i] = checked_exponent(exponents[i]);
}

void Monomial::set(std::size_t i, unsigned value) {
  if (i >= size_) throw StructuralError("monomial index out of range");
  exps_[i] = checked_exponent(value);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (std::size_t i = 0; i < size_; ++i) d += exps_[i];
  return d;
}

bool Monomial::is_one() const {
  for (std::size_t i = 0; i < size_; ++i)
    if (exps_[i] != 0) return false;
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < size_; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  check_same_size(*this, other);
  Monomial r(size_);
  for (std::size_t i = 0; i < size_; ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& other) const {
  check_same_size(*this, other);
  Monomial r(size_);
  for (std::size_t i = 0; i < size_; ++i) r.exps_[i] = std::min(exps_[i], other.exps_[i]);
  return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  check_same_size(*this, divisor);
  if (!divisor.divides(*this)) throw ArithmeticError("monomial quotient is not exact");
  Monomial r(size_);
  for (std::size_t i = 0; i < size_; ++i) r.exps_[i] = exps_[i] - divisor.exps_[i];
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  check_same_size(a, b);
  Monomial r(a.size_);
  for (std::size_t i = 0; i < a.size_; ++i)
    r.exps_[i] = checked_exponent(static_cast<unsigned long>(a.exps_[i]) + b.exps_[i]);
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < size_; ++i) {
    h ^= exps_[i];
    h *= 1099511628211ull;
  }
  return h;
}

MonomialOrder::MonomialOrder(std::size_t nvars, std::vector<OrderBlock> blocks)
    : nvars_(nvars), blocks_(std::move(blocks)), block_of_(nvars, blocks_.size()) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].vars.empty()) throw StructuralError("empty block in monomial order");
    for (std::size_t v : blocks_[b].vars) {
      if (v >= nvars) throw StructuralError("monomial order names an unknown variable");
      if (block_of_[v] != blocks_.size()) throw StructuralError("variable listed twice in monomial order");
      block_of_[v] = b;
    }
  }
  for (std::size_t v = 0; v < nvars; ++v)
    if (block_of_[v] == blocks_.size()) throw StructuralError("variable missing from monomial order");
}

namespace {
MonomialOrder single_block(std::size_t nvars, BaseOrder base) {
  OrderBlock block;
  block.base = base;
  for (std::size_t i = 0; i < nvars; ++i) block.vars.push_back(i);
  return MonomialOrder(nvars, {block});
}
}  // namespace

MonomialOrder MonomialOrder::deglex(std::size_t nvars) { return single_block(nvars, BaseOrder::DegLex); }
MonomialOrder MonomialOrder::degrevlex(std::size_t nvars) {
  return single_block(nvars, BaseOrder::DegRevLex);
}
MonomialOrder MonomialOrder::lex(std::size_t nvars) { return single_block(nvars, BaseOrder::Lex); }

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const OrderBlock& block : blocks_) {
    if (block.base != BaseOrder::Lex) {
      unsigned da = 0, db = 0;
      for (std::size_t v : block.vars) {
        da += a[v];
        db += b[v];
      }
      if (da != db) return da <=> db;
    }
    if (block.base == BaseOrder::DegRevLex) {
      for (auto it = block.vars.rbegin(); it != block.vars.rend(); ++it) {
        if (a[*it] != b[*it]) return b[*it] <=> a[*it];
      }
    } else {
      for (std::size_t v : block.vars) {
        if (a[v] != b[v]) return a[v] <=> b[v];
      }
    }
  }
  return std::strong_ordering::equal;
}

bool MonomialOrder::eliminates(std::span<const std::size_t> eliminated) const {
  std::vector<bool> is_elim(nvars_, false);
  for (std::size_t v : eliminated) {
    if (v >= nvars_) throw StructuralError("unknown variable in elimination set");
    is_elim[v] = true;
  }
  std::size_t last_elim_block = 0;
  std::size_t first_kept_block = blocks_.size();
  bool any_elim = false;
  for (std::size_t v = 0; v < nvars_; ++v) {
    if (is_elim[v]) {
      any_elim = true;
      last_elim_block = std::max(last_elim_block, block_of_[v]);
    } else {
      first_kept_block = std::min(first_kept_block, block_of_[v]);
    }
  }
  if (!any_elim) return true;
  return last_elim_block < first_kept_block;
}

MonomialOrder MonomialOrder::parse(std::string_view spec, std::span<const std::string> names,
                                   std::span<const std::string> implicit_top) {
  auto index_of = [&](const std::string& name, std::size_t pos) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("unknown variable '" + name + "' in order spec", pos);
    return static_cast<std::size_t>(it - names.begin());
  };
  std::vector<OrderBlock> blocks;
  std::vector<bool> seen(names.size(), false);
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t sep = spec.find(">>", start);
    std::string_view part = spec.substr(start, sep == std::string_view::npos ? spec.npos : sep - start);
    OrderBlock block;
    std::string text = trim(part);
    auto colon = text.find(':');
    if (colon != std::string::npos) {
      std::string base = trim(std::string_view(text).substr(colon + 1));
      if (base == "dlex") block.base = BaseOrder::DegLex;
      else if (base == "drl") block.base = BaseOrder::DegRevLex;
      else if (base == "lex") block.base = BaseOrder::Lex;
      else throw ParseError("unknown base order '" + base + "'", start + colon + 1);
      text = text.substr(0, colon);
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) throw ParseError("empty variable name in order spec", start);
      std::size_t v = index_of(item, start);
      if (seen[v]) throw ParseError("variable '" + item + "' listed twice in order spec", start);
      seen[v] = true;
      block.vars.push_back(v);
    }
    if (block.vars.empty()) throw ParseError("empty block in order spec", start);
    blocks.push_back(std::move(block));
    if (sep == std::string_view::npos) break;
    start = sep + 2;
  }
  OrderBlock top;
  top.base = BaseOrder::DegLex;
  for (const std::string& name : implicit_top) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) continue;
    std::size_t v = static_cast<std::size_t>(it - names.begin());
    if (!seen[v]) {
      seen[v] = true;
      top.vars.push_back(v);
    }
  }
  if (!top.vars.empty()) blocks.insert(blocks.begin(), std::move(top));
  for (std::size_t v = 0; v < names.size(); ++v)
    if (!seen[v]) throw ParseError("variable '" + names[v] + "' missing from order spec", spec.size());
  return MonomialOrder(names.size(), std::move(blocks));
}

std::string MonomialOrder::to_string(std::span<const std::string> names) const {
  std::string out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += " >> ";
    for (std::size_t i = 0; i < blocks_[b].vars.size(); ++i) {
      if (i) out += ",";
      std::size_t v = blocks_[b].vars[i];
      out += v < names.size() ? names[v] : "v" + std::to_string(v);
    }
    switch (blocks_[b].base) {
      case BaseOrder::DegLex: out += ":dlex"; break;
      case BaseOrder::DegRevLex: out += ":drl"; break;
      case BaseOrder::Lex: out += ":lex"; break;
    }
  }
  return out;
}

std::strong_ordering compare(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
  return order.compare(a, b);
}

}  // namespace lbf
