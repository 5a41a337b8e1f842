// Copyright 2026 The ballean-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

namespace ballean {

/// Largest universe a FinSet can index. Every truncation in this library
/// is far below it; exhaustive sweeps give out long before 64 points.
inline constexpr std::size_t kMaxUniverse = 64;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a construction would not fit the enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t required)
      : std::runtime_error(what), required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite subset of {0, ..., kMaxUniverse-1}, stored as a bit mask.
///
/// Ordering is by cardinality first and lexicographic on the sorted member
/// list second, which is the enumeration order used for radii.
class FinSet {
 public:
  constexpr FinSet() = default;
  FinSet(std::initializer_list<std::size_t> members) {
    for (auto m : members) insert(m);
  }

  static constexpr FinSet from_mask(std::uint64_t mask) {
    FinSet s;
    s.bits_ = mask;
    return s;
  }
  template <class Range>
  static FinSet from_members(const Range& members) {
    FinSet s;
    for (auto m : members) s.insert(static_cast<std::size_t>(m));
    return s;
  }
  /// {first, ..., last}; empty when last < first.
  static FinSet range(std::size_t first, std::size_t last) {
    FinSet s;
    for (std::size_t i = first; i <= last && i < kMaxUniverse; ++i) s.insert(i);
    return s;
  }

  constexpr std::uint64_t mask() const { return bits_; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t x) const {
    return x < kMaxUniverse && ((bits_ >> x) & 1U) != 0;
  }
  std::size_t min() const {
    if (empty()) throw DomainError("min of empty FinSet");
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }
  std::size_t max() const {
    if (empty()) throw DomainError("max of empty FinSet");
    return static_cast<std::size_t>(std::bit_width(bits_) - 1);
  }
  /// Members in increasing order.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t m = bits_; m != 0; m &= m - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    }
    return out;
  }
  /// True iff every member is below `universe`.
  constexpr bool fits(std::size_t universe) const {
    return universe >= kMaxUniverse || (bits_ >> universe) == 0;
  }

  void insert(std::size_t x) {
    if (x >= kMaxUniverse) throw DomainError("FinSet member " + std::to_string(x) + " exceeds capacity");
    bits_ |= std::uint64_t{1} << x;
  }
  FinSet with(std::size_t x) const {
    FinSet s = *this;
    s.insert(x);
    return s;
  }
  FinSet without(std::size_t x) const {
    return x < kMaxUniverse ? from_mask(bits_ & ~(std::uint64_t{1} << x)) : *this;
  }

  constexpr bool subset_of(FinSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(FinSet other) const { return (bits_ & other.bits_) != 0; }

  friend constexpr FinSet operator|(FinSet a, FinSet b) { return from_mask(a.bits_ | b.bits_); }
  friend constexpr FinSet operator&(FinSet a, FinSet b) { return from_mask(a.bits_ & b.bits_); }
  friend constexpr FinSet operator-(FinSet a, FinSet b) { return from_mask(a.bits_ & ~b.bits_); }

  friend constexpr bool operator==(FinSet a, FinSet b) { return a.bits_ == b.bits_; }
  friend constexpr std::strong_ordering operator<=>(FinSet a, FinSet b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (a.bits_ == b.bits_) return std::strong_ordering::equal;
    // Same size: the set owning the least element of the symmetric
    // difference comes first in lexicographic order of sorted members.
    const std::uint64_t low = (a.bits_ ^ b.bits_) & (~(a.bits_ ^ b.bits_) + 1);
    return (a.bits_ & low) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint64_t bits_ = 0;
};

inline std::string to_string(FinSet s) {
  std::string out = "{";
  bool first = true;
  for (auto m : s.members()) {
    if (!first) out += ",";
    out += std::to_string(m);
    first = false;
  }
  return out + "}";
}

/// A point of the truncated Cantor macrocube: a 0/1 word of fixed length.
class BitVector {
 public:
  BitVector() = default;
  BitVector(std::size_t length, FinSet support) : length_(length), support_(support) {
    if (length > kMaxUniverse) throw DomainError("BitVector length exceeds capacity");
    if (!support.fits(length)) {
      throw DomainError("support " + to_string(support) + " does not fit length " + std::to_string(length));
    }
  }
  static BitVector zero(std::size_t length) { return BitVector(length, FinSet{}); }

  std::size_t length() const { return length_; }
  FinSet support() const { return support_; }
  bool bit(std::size_t i) const { return support_.contains(i); }
  bool is_zero() const { return support_.empty(); }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.support_.mask() <=> b.support_.mask();
  }

 private:
  std::size_t length_ = 0;
  FinSet support_;
};

/// Point (m, layer) of the doubled line; layer is 0 or 1.
struct DoubledPoint {
  std::size_t base = 0;
  unsigned layer = 0;
  friend auto operator<=>(const DoubledPoint&, const DoubledPoint&) = default;
};

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_of(const Rational& r) {
  auto q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline std::int64_t ceil_of(const Rational& r) {
  auto q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// All subsets of {0..universe-1} with at most `max_size` members, ordered by
/// size and then lexicographically.
inline std::vector<FinSet> finsets_up_to(std::size_t universe, std::size_t max_size) {
  if (universe > kMaxUniverse) throw DomainError("universe exceeds FinSet capacity");
  std::vector<FinSet> out;
  const std::size_t top = std::min(universe, max_size);
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      out.push_back(FinSet::from_members(idx));
      // Advance to the next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == universe - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// JSON forms: FinSets and BitVector supports as sorted arrays, doubled points
// as [m, layer], rationals as integers when integral and "p/q" otherwise.

inline void to_json(nlohmann::json& j, const FinSet& s) { j = s.members(); }
inline void from_json(const nlohmann::json& j, FinSet& s) {
  s = FinSet{};
  for (const auto& m : j) s.insert(m.get<std::size_t>());
}
inline void to_json(nlohmann::json& j, const BitVector& v) { j = v.support().members(); }
inline void to_json(nlohmann::json& j, const DoubledPoint& p) { j = nlohmann::json::array({p.base, p.layer}); }

}  // namespace ballean

namespace boost {
// Found by ADL for Rational.
inline void to_json(nlohmann::json& j, const rational<std::int64_t>& r) {
  if (r.denominator() == 1) {
    j = r.numerator();
  } else {
    j = std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  }
}
inline void from_json(const nlohmann::json& j, rational<std::int64_t>& r) {
  if (j.is_number_integer()) {
    r = rational<std::int64_t>(j.get<std::int64_t>());
    return;
  }
  const auto text = j.get<std::string>();
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw ballean::DomainError("bad rational: " + text);
  r = rational<std::int64_t>(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}
}  // namespace boost
