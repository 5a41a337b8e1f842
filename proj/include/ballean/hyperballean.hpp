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

// The hyperballean B# on the non-empty bounded subsets of a base ballean:
//
//   B#(Y, a) = {Z : Z c B(Y, a) and Y c B(Z, a)}.
//
// Balls are computed straight from that definition. Closed forms elsewhere
// in the library are checked against this construction, never the other
// way round.

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "ballean/ballean.hpp"
#include "ballean/core.hpp"

namespace ballean {

/// Largest base support the hyperballean will enumerate (2^20 subsets).
inline constexpr std::size_t kMaxHyperBase = 20;

namespace detail {

/// Hyperballean state over a base of n <= kMaxHyperBase elements. Subsets of
/// the base are n-bit masks over base element indices.
template <class R>
struct HyperState {
  std::size_t n = 0;
  std::vector<std::uint64_t> masks;          // element index -> mask
  std::vector<std::int32_t> index_of_mask;   // mask -> element index or -1
  std::map<R, std::size_t> radius_slot;      // enumerated radius -> slot
  std::vector<std::vector<std::uint64_t>> base_balls;  // slot -> base ball masks
  std::vector<std::vector<std::uint64_t>> set_balls;   // slot -> B(mask, a), if tabulated
  std::function<std::vector<std::uint64_t>(const R&)> compute_base_balls;

  // B(Z, a) for a subset Z of the base, as a mask.
  static std::uint64_t union_of(const std::vector<std::uint64_t>& balls, std::uint64_t z) {
    std::uint64_t out = 0;
    for (; z != 0; z &= z - 1) out |= balls[static_cast<std::size_t>(std::countr_zero(z))];
    return out;
  }

  // B(., a) for one radius: a table lookup, cached base balls, or base
  // balls computed for a radius outside the enumeration.
  struct View {
    const std::vector<std::uint64_t>* balls;
    const std::vector<std::uint64_t>* table;
    std::vector<std::uint64_t> owned;
    std::uint64_t operator()(std::uint64_t z) const {
      if (table != nullptr) return (*table)[z];
      return union_of(balls != nullptr ? *balls : owned, z);
    }
  };

  View view(const R& a) const {
    auto it = radius_slot.find(a);
    if (it != radius_slot.end()) {
      const auto slot = it->second;
      return View{&base_balls[slot], set_balls.empty() ? nullptr : &set_balls[slot], {}};
    }
    return View{nullptr, nullptr, compute_base_balls(a)};
  }
};

}  // namespace detail

/// Hyperballean of `base`. Elements are the non-empty subsets of the base
/// support, as FinSets of base element indices, ordered by mask value. When
/// the base does not declare every finite set bounded (metric bases), a
/// subset is kept only if some witness-horizon ball of the base covers it.
template <class P, class R>
Ballean<FinSet, R> hyperballean(const Ballean<P, R>& base) {
  const std::size_t n = base.size();
  if (n > kMaxHyperBase) {
    throw ResourceError("hyperballean enumerates 2^N subsets; base has N=" + std::to_string(n) +
                            " elements, at most " + std::to_string(kMaxHyperBase) + " supported",
                        n);
  }
  auto st = std::make_shared<detail::HyperState<R>>();
  st->n = n;
  st->compute_base_balls = [base, n](const R& a) {
    std::vector<std::uint64_t> out(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for_each_member(ball(base, x, a), [&](std::size_t y) { out[x] |= std::uint64_t{1} << y; });
    }
    return out;
  };
  for (const auto& a : base.witness_radii()) {
    st->radius_slot.emplace(a, st->base_balls.size());
    st->base_balls.push_back(st->compute_base_balls(a));
  }
  for (const auto& a : base.radii()) {
    if (!st->radius_slot.count(a)) {
      st->radius_slot.emplace(a, st->base_balls.size());
      st->base_balls.push_back(st->compute_base_balls(a));
    }
  }

  const std::uint64_t subsets = std::uint64_t{1} << n;
  // Tabulate B(Z, a) for every subset Z when it fits in ~64 MiB.
  if (st->base_balls.size() * subsets <= (std::uint64_t{1} << 23)) {
    st->set_balls.resize(st->base_balls.size());
    for (std::size_t s = 0; s < st->base_balls.size(); ++s) {
      auto& table = st->set_balls[s];
      table.assign(subsets, 0);
      for (std::uint64_t z = 1; z < subsets; ++z) {
        table[z] = table[z & (z - 1)] | st->base_balls[s][static_cast<std::size_t>(std::countr_zero(z))];
      }
    }
  }

  st->index_of_mask.assign(subsets, -1);
  for (std::uint64_t z = 1; z < subsets; ++z) {
    bool bounded = base.finite_sets_bounded();
    for (std::size_t s = 0; !bounded && s < base.witness_radii().size(); ++s) {
      const auto& balls = st->base_balls[st->radius_slot.at(base.witness_radii()[s])];
      for (std::size_t x = 0; x < n && !bounded; ++x) bounded = (z & ~balls[x]) == 0;
    }
    if (bounded) {
      st->index_of_mask[z] = static_cast<std::int32_t>(st->masks.size());
      st->masks.push_back(z);
    }
  }
  if (st->masks.empty()) throw ConstructionError("hyperballean: no bounded subsets at this truncation");

  typename Ballean<FinSet, R>::Definition def;
  def.name = "hyper-of:" + base.name();
  def.truncation = base.truncation();
  def.elements.reserve(st->masks.size());
  for (auto m : st->masks) def.elements.push_back(FinSet::from_mask(m));
  def.radii = base.radii();
  def.witness_radii = base.witness_radii();
  def.admits_radius = [base](const R& a) { return base.admits_radius(a); };
  def.raw_ball = [st](std::size_t yi, const R& a) {
    ElementSet out(st->masks.size());
    const auto sb = st->view(a);
    const std::uint64_t y = st->masks[yi];
    const std::uint64_t around_y = sb(y);
    // Candidates Z range over the non-empty subsets of B(Y, a).
    for (std::uint64_t z = around_y; z != 0; z = (z - 1) & around_y) {
      const auto zi = st->index_of_mask[z];
      if (zi < 0) continue;
      if ((z & ~around_y) == 0 && (y & ~sb(z)) == 0) out.set(static_cast<std::size_t>(zi));
    }
    return out;
  };
  def.raw_contains = [st](std::size_t yi, const R& a, std::size_t zi) {
    const auto sb = st->view(a);
    const std::uint64_t y = st->masks[yi];
    const std::uint64_t z = st->masks[zi];
    return (z & ~sb(y)) == 0 && (y & ~sb(z)) == 0;
  };
  return Ballean<FinSet, R>(std::move(def));
}

/// The hyperball of H at radius a, as FinSets of base indices.
template <class R>
std::vector<FinSet> hyperball_sets(const Ballean<FinSet, R>& hyper, const FinSet& h, const R& a) {
  auto out = hyper.points_of(ball(hyper, hyper.require_index(h), a));
  std::sort(out.begin(), out.end());
  return out;
}

/// Closed form of the F_X hyperball: {H} when H misses F, otherwise
/// {(H \ F) u W : W a non-empty subset of F}. Sorted by FinSet order.
inline std::vector<FinSet> f_hyperball_closed(const FinSet& h, const FinSet& f) {
  if (h.empty()) throw DomainError("f_hyperball_closed: H must be non-empty");
  if (!h.intersects(f)) return {h};
  std::vector<FinSet> out;
  const FinSet rest = h - f;
  for (std::uint64_t w = f.mask(); w != 0; w = (w - 1) & f.mask()) out.push_back(rest | FinSet::from_mask(w));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ballean
