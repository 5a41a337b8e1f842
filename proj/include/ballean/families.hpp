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

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ballean/ballean.hpp"
#include "ballean/core.hpp"

namespace ballean {

/// Q is enumerated eagerly, so its word length is capped.
inline constexpr std::size_t kMaxCubeLength = 20;

/// F_X on {0..N-1}: B(x, F) = F if x is in F, {x} otherwise.
inline Ballean<std::size_t, FinSet> f_ballean(const Truncation& t) {
  t.validate();
  if (t.universe_size > kMaxUniverse) throw ResourceError("f_ballean universe too large", t.universe_size);
  const std::size_t n = t.universe_size;
  Ballean<std::size_t, FinSet>::Definition def;
  def.name = "f_ballean";
  def.truncation = t;
  for (std::size_t i = 0; i < n; ++i) def.elements.push_back(i);
  def.radii = finsets_up_to(n, t.radius_budget);
  def.witness_radii = finsets_up_to(n, t.witness_horizon);
  def.finite_sets_bounded = true;
  def.admits_radius = [n](const FinSet& f) { return f.fits(n); };
  def.raw_ball = [n](std::size_t x, const FinSet& f) {
    ElementSet out(n);
    if (f.contains(x)) {
      for (auto m : f.members()) out.set(m);
    } else {
      out.set(x);
    }
    return out;
  };
  def.raw_contains = [](std::size_t x, const FinSet& f, std::size_t y) {
    return f.contains(x) ? f.contains(y) : x == y;
  };
  return Ballean<std::size_t, FinSet>(std::move(def));
}

/// The truncated Cantor macrocube: words of length N, B(x, F) = words that
/// agree with x off F. Element i is the word whose support has mask i.
inline Ballean<BitVector, FinSet> q_ballean(const Truncation& t) {
  t.validate();
  const std::size_t n = t.universe_size;
  if (n > kMaxCubeLength) {
    throw ResourceError("q_ballean enumerates 2^N words; N=" + std::to_string(n) + " exceeds the cap", n);
  }
  Ballean<BitVector, FinSet>::Definition def;
  def.name = "q_ballean";
  def.truncation = t;
  const std::uint64_t count = std::uint64_t{1} << n;
  def.elements.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) def.elements.emplace_back(n, FinSet::from_mask(m));
  def.radii = finsets_up_to(n, t.radius_budget);
  def.witness_radii = finsets_up_to(n, t.witness_horizon);
  def.finite_sets_bounded = true;
  def.admits_radius = [n](const FinSet& f) { return f.fits(n); };
  def.raw_ball = [count](std::size_t x, const FinSet& f) {
    ElementSet out(count);
    const std::uint64_t fixed = x & ~f.mask();
    // Every pattern on F, including the empty one.
    std::uint64_t sub = f.mask();
    while (true) {
      out.set(fixed | sub);
      if (sub == 0) break;
      sub = (sub - 1) & f.mask();
    }
    return out;
  };
  def.raw_contains = [](std::size_t x, const FinSet& f, std::size_t y) {
    return ((x ^ y) & ~f.mask()) == 0;
  };
  return Ballean<BitVector, FinSet>(std::move(def));
}

/// A metric on an index space, given in closed form or as a finite table.
struct MetricTable {
  enum class Kind { closed_form, table };
  std::string name;
  Kind kind = Kind::closed_form;
  std::optional<std::size_t> table_size;  // set for Kind::table
  std::function<Rational(std::size_t, std::size_t)> eval;
};

inline MetricTable line_metric() {
  return {"line", MetricTable::Kind::closed_form, std::nullopt, [](std::size_t m, std::size_t n) {
            return Rational(m > n ? static_cast<std::int64_t>(m - n) : static_cast<std::int64_t>(n - m));
          }};
}

/// d(m, n) = |2^m - 2^n|.
inline MetricTable pow2_metric() {
  return {"pow2", MetricTable::Kind::closed_form, std::nullopt, [](std::size_t m, std::size_t n) {
            if (m >= 62 || n >= 62) throw DomainError("pow2 metric overflows beyond index 61");
            const auto a = std::int64_t{1} << m;
            const auto b = std::int64_t{1} << n;
            return Rational(a > b ? a - b : b - a);
          }};
}

/// Distance-table metric over `size` indices.
inline MetricTable table_metric(std::string name, std::size_t size, std::function<Rational(std::size_t, std::size_t)> eval) {
  return {std::move(name), MetricTable::Kind::table, size, std::move(eval)};
}

/// Least m such that u and v agree at every position >= m; 0 when equal.
inline std::size_t tail_metric(const BitVector& u, const BitVector& v) {
  if (u.length() != v.length()) throw DomainError("tail_metric needs vectors of equal length");
  return static_cast<std::size_t>(std::bit_width(u.support().mask() ^ v.support().mask()));
}

/// Checks d(m,m) = 0, d >= 0, symmetry and the triangle inequality on every
/// triple below n. Throws ConstructionError naming the first violation.
inline std::vector<Rational> validated_distances(const MetricTable& d, std::size_t n) {
  if (d.kind == MetricTable::Kind::table && d.table_size && n > *d.table_size) {
    throw ConstructionError(d.name + ": table covers " + std::to_string(*d.table_size) + " points, need " +
                            std::to_string(n));
  }
  std::vector<Rational> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = d.eval(i, j);
  }
  auto at = [&](std::size_t i, std::size_t j) { return dist[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != Rational(0)) throw ConstructionError(d.name + ": d(x,x) != 0 at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j) < Rational(0)) throw ConstructionError(d.name + ": negative distance");
      if (at(i, j) != at(j, i)) {
        throw ConstructionError(d.name + ": asymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (at(i, k) > at(i, j) + at(j, k)) {
          throw ConstructionError(d.name + ": triangle inequality fails at (" + std::to_string(i) + "," +
                                  std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
  return dist;
}

/// Metric ballean B_d(x, r) = {y : d(x, y) <= r} on {0..N-1}. Radii are the
/// integers 0..budget (witnesses 0..horizon) merged with `extra_radii`.
inline Ballean<std::size_t, Rational> metric_ballean(const MetricTable& d, const Truncation& t,
                                                     const std::vector<Rational>& extra_radii = {}) {
  t.validate();
  const std::size_t n = t.universe_size;
  auto dist = std::make_shared<const std::vector<Rational>>(validated_distances(d, n));
  for (const auto& r : extra_radii) {
    if (r < Rational(0)) throw ConstructionError(d.name + ": negative radius " + to_string(r));
  }
  auto enumerate = [&](std::size_t top) {
    std::vector<Rational> rs;
    for (std::size_t r = 0; r <= top; ++r) rs.emplace_back(static_cast<std::int64_t>(r));
    rs.insert(rs.end(), extra_radii.begin(), extra_radii.end());
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
  };
  Ballean<std::size_t, Rational>::Definition def;
  def.name = "metric:" + d.name;
  def.truncation = t;
  for (std::size_t i = 0; i < n; ++i) def.elements.push_back(i);
  def.radii = enumerate(t.radius_budget);
  def.witness_radii = enumerate(t.witness_horizon);
  def.admits_radius = [](const Rational& r) { return r >= Rational(0); };
  def.raw_ball = [dist, n](std::size_t x, const Rational& r) {
    ElementSet out(n);
    for (std::size_t y = 0; y < n; ++y) {
      if ((*dist)[x * n + y] <= r) out.set(y);
    }
    return out;
  };
  def.raw_contains = [dist, n](std::size_t x, const Rational& r, std::size_t y) { return (*dist)[x * n + y] <= r; };
  return Ballean<std::size_t, Rational>(std::move(def));
}

/// {0..N-1} x {0,1} with each pair glued at every radius:
/// B((m,i), F) = {(m,0),(m,1)} plus F x {0,1} when m is in F.
/// Not F_X itself, but its layer-0 copy is a large F-subballean.
inline Ballean<DoubledPoint, FinSet> doubled_ballean(const Truncation& t) {
  t.validate();
  const std::size_t n = t.universe_size;
  if (n > kMaxUniverse) throw ResourceError("doubled_ballean universe too large", n);
  Ballean<DoubledPoint, FinSet>::Definition def;
  def.name = "doubled";
  def.truncation = t;
  for (std::size_t m = 0; m < n; ++m) {
    def.elements.push_back({m, 0});
    def.elements.push_back({m, 1});
  }
  def.radii = finsets_up_to(n, t.radius_budget);
  def.witness_radii = finsets_up_to(n, t.witness_horizon);
  def.finite_sets_bounded = true;
  def.admits_radius = [n](const FinSet& f) { return f.fits(n); };
  def.raw_ball = [n](std::size_t x, const FinSet& f) {
    ElementSet out(2 * n);
    const std::size_t m = x / 2;
    out.set(2 * m);
    out.set(2 * m + 1);
    if (f.contains(m)) {
      for (auto k : f.members()) {
        out.set(2 * k);
        out.set(2 * k + 1);
      }
    }
    return out;
  };
  def.raw_contains = [](std::size_t x, const FinSet& f, std::size_t y) {
    return x / 2 == y / 2 || (f.contains(x / 2) && f.contains(y / 2));
  };
  return Ballean<DoubledPoint, FinSet>(std::move(def));
}

/// Layer-0 copy {(m,0)} of the doubled line.
inline ElementSet doubled_layer(const Ballean<DoubledPoint, FinSet>& b, unsigned layer) {
  ElementSet s = b.empty_set();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.element(i).layer == layer) s.set(i);
  }
  return s;
}

}  // namespace ballean
