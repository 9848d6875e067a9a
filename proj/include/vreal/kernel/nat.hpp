// Copyright 2026 The vreal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Natural numbers as canonical Cantor pair-trees.
//
// A value below kSmallLimit is stored as a machine word. Every larger value n
// is stored as the pair node <proj1 n, proj2 n>, recursively. Since pairing
// is a bijection and both components of a large value are strictly smaller,
// every natural has exactly one representation, so structural equality is
// numeric equality. Program codes built by nested pairing grow far beyond
// what decimal arithmetic could hold; here they cost space linear in the
// size of the program they encode.

#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace vreal::kernel {

using u128 = unsigned __int128;

inline constexpr std::uint64_t kSmallLimit = std::uint64_t{1} << 63;

namespace detail {

inline std::uint64_t isqrt128(u128 n) {
  // floor(sqrt(n)) for n < 2^127.
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Cantor components of n < 2^64 * 2^62 (plenty for small values).
inline std::pair<u128, u128> unpair128(u128 n) {
  const std::uint64_t s = isqrt128(8 * n + 1);
  const u128 w = (static_cast<u128>(s) - 1) / 2;
  const u128 t = w * (w + 1) / 2;
  const u128 a = n - t;
  return {a, w - a};
}

}  // namespace detail

class Nat {
 public:
  Nat() = default;
  Nat(std::uint64_t v) {  // NOLINT: implicit from machine words is intended
    if (v < kSmallLimit) {
      small_ = v;
    } else {
      *this = from_u128(v);
    }
  }
  template <std::signed_integral I>
  Nat(I v) : Nat(checked(v)) {}  // NOLINT

  static Nat from_u128(u128 v);
  static Nat from_big(const boost::multiprecision::cpp_int& v);

  // Cantor pairing (a+b)(a+b+1)/2 + a.
  static Nat pair(const Nat& a, const Nat& b);

  bool is_small() const { return cell_ == nullptr; }
  std::optional<std::uint64_t> small() const {
    if (is_small()) return small_;
    return std::nullopt;
  }
  bool is_zero() const { return is_small() && small_ == 0; }

  Nat proj1() const;
  Nat proj2() const;
  Nat succ() const;
  // Requires *this > 0.
  Nat pred() const;

  // Number of pair nodes plus machine words; a size measure, not a value.
  std::size_t tree_size() const;
  // Upper bound on the bit length of the value.
  std::uint64_t bit_bound() const;
  boost::multiprecision::cpp_int to_big() const;

  friend bool operator==(const Nat& x, const Nat& y);
  // Canonical total order: numeric below 2^63, every small value precedes
  // every pair node, pair nodes compare lexicographically by component.
  // This is a container order, not the numeric order on large values.
  friend std::strong_ordering operator<=>(const Nat& x, const Nat& y);

  std::size_t hash() const;

 private:
  struct Cell;

  template <std::signed_integral I>
  static std::uint64_t checked(I v) {
    if (v < 0) throw std::domain_error("negative natural");
    return static_cast<std::uint64_t>(v);
  }

  static Nat make_pair_node(Nat a, Nat b);

  std::uint64_t small_ = 0;
  std::shared_ptr<const Cell> cell_;
};

struct Nat::Cell {
  Nat first;
  Nat second;
  std::size_t hash;
};

inline Nat Nat::make_pair_node(Nat a, Nat b) {
  Nat n;
  const std::size_t h = a.hash() * 0x9e3779b97f4a7c15ULL ^ (b.hash() + 0x7f4a7c159e3779b9ULL + (a.hash() << 6));
  n.cell_ = std::make_shared<const Cell>(Cell{std::move(a), std::move(b), h});
  return n;
}

inline Nat Nat::from_u128(u128 v) {
  if (v < kSmallLimit) return Nat(static_cast<std::uint64_t>(v));
  auto [a, b] = detail::unpair128(v);
  return make_pair_node(from_u128(a), from_u128(b));
}

inline Nat Nat::from_big(const boost::multiprecision::cpp_int& v) {
  using boost::multiprecision::cpp_int;
  if (v < 0) throw std::domain_error("negative natural");
  if (v < cpp_int(kSmallLimit)) return Nat(static_cast<std::uint64_t>(v));
  const cpp_int s = boost::multiprecision::sqrt(cpp_int(8 * v + 1));
  const cpp_int w = (s - 1) / 2;
  const cpp_int a = v - w * (w + 1) / 2;
  return make_pair_node(from_big(a), from_big(w - a));
}

inline Nat Nat::pair(const Nat& a, const Nat& b) {
  if (a.is_small() && b.is_small()) {
    const u128 w = static_cast<u128>(a.small_) + b.small_;
    const u128 v = w * (w + 1) / 2 + a.small_;
    if (v < kSmallLimit) return Nat(static_cast<std::uint64_t>(v));
  }
  return make_pair_node(a, b);
}

inline Nat Nat::proj1() const {
  if (!is_small()) return cell_->first;
  return Nat(static_cast<std::uint64_t>(detail::unpair128(small_).first));
}

inline Nat Nat::proj2() const {
  if (!is_small()) return cell_->second;
  return Nat(static_cast<std::uint64_t>(detail::unpair128(small_).second));
}

inline Nat Nat::succ() const {
  if (is_small()) return from_u128(static_cast<u128>(small_) + 1);
  // pair(a,b)+1 = pair(a+1,b-1) if b > 0, else pair(0,a+1).
  const Nat& a = cell_->first;
  const Nat& b = cell_->second;
  if (b.is_zero()) return pair(Nat(), a.succ());
  return pair(a.succ(), b.pred());
}

inline Nat Nat::pred() const {
  if (is_small()) {
    if (small_ == 0) throw std::domain_error("predecessor of zero");
    return Nat(small_ - 1);
  }
  // pair(a,b)-1 = pair(a-1,b+1) if a > 0, else pair(b-1,0).
  const Nat& a = cell_->first;
  const Nat& b = cell_->second;
  if (a.is_zero()) return pair(b.pred(), Nat());
  return pair(a.pred(), b.succ());
}

inline std::size_t Nat::tree_size() const {
  return is_small() ? 1 : 1 + cell_->first.tree_size() + cell_->second.tree_size();
}

inline std::uint64_t Nat::bit_bound() const {
  if (is_small()) return small_ == 0 ? 1 : 64 - __builtin_clzll(small_);
  const std::uint64_t m = std::max(cell_->first.bit_bound(), cell_->second.bit_bound());
  return m > (std::uint64_t{1} << 40) ? m : 2 * m + 2;
}

inline boost::multiprecision::cpp_int Nat::to_big() const {
  using boost::multiprecision::cpp_int;
  if (is_small()) return cpp_int(small_);
  const cpp_int a = cell_->first.to_big();
  const cpp_int b = cell_->second.to_big();
  const cpp_int w = a + b;
  return w * (w + 1) / 2 + a;
}

inline bool operator==(const Nat& x, const Nat& y) {
  if (x.cell_ == y.cell_) return x.small_ == y.small_;
  if (x.is_small() || y.is_small()) return false;
  if (x.cell_->hash != y.cell_->hash) return false;
  return x.cell_->first == y.cell_->first && x.cell_->second == y.cell_->second;
}

inline std::strong_ordering operator<=>(const Nat& x, const Nat& y) {
  if (x.is_small() && y.is_small()) return x.small_ <=> y.small_;
  if (x.is_small()) return std::strong_ordering::less;
  if (y.is_small()) return std::strong_ordering::greater;
  if (x.cell_ == y.cell_) return std::strong_ordering::equal;
  if (auto c = x.cell_->first <=> y.cell_->first; c != 0) return c;
  return x.cell_->second <=> y.cell_->second;
}

inline std::size_t Nat::hash() const {
  if (is_small()) return std::hash<std::uint64_t>{}(small_);
  return cell_->hash;
}

inline Nat pair(const Nat& a, const Nat& b) { return Nat::pair(a, b); }
inline Nat proj1(const Nat& n) { return n.proj1(); }
inline Nat proj2(const Nat& n) { return n.proj2(); }

inline constexpr std::uint64_t kDecimalBitLimit = 4096;

// Decimal when the value is known to fit kDecimalBitLimit bits, otherwise
// the exact pair notation "<a,b>".
inline std::string to_string(const Nat& n) {
  if (auto s = n.small()) return std::to_string(*s);
  if (n.bit_bound() <= kDecimalBitLimit) return n.to_big().str();
  return "<" + to_string(n.proj1()) + "," + to_string(n.proj2()) + ">";
}

inline std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << to_string(n); }

namespace detail {

inline Nat parse_nat_at(std::string_view text, std::size_t& pos) {
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string("natural: ") + what + " at offset " + std::to_string(pos));
  };
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size()) fail("unexpected end");
  if (text[pos] == '<') {
    ++pos;
    Nat a = parse_nat_at(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != ',') fail("expected ','");
    ++pos;
    Nat b = parse_nat_at(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != '>') fail("expected '>'");
    ++pos;
    return Nat::pair(a, b);
  }
  const std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (start == pos) fail("expected digit or '<'");
  const std::string_view digits = text.substr(start, pos - start);
  if (digits.size() <= 18) return Nat(std::stoull(std::string(digits)));
  return Nat::from_big(boost::multiprecision::cpp_int(std::string(digits)));
}

}  // namespace detail

// Accepts decimal digits or pair notation, e.g. "7", "<1,2>".
inline Nat parse_nat(std::string_view text) {
  std::size_t pos = 0;
  Nat n = detail::parse_nat_at(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw std::invalid_argument("natural: trailing characters in '" + std::string(text) + "'");
  return n;
}

}  // namespace vreal::kernel

template <>
struct std::hash<vreal::kernel::Nat> {
  std::size_t operator()(const vreal::kernel::Nat& n) const noexcept { return n.hash(); }
};
