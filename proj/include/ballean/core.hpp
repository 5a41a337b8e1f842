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

// Ball algebra and the basic relational predicates, evaluated at a
// truncation. Existential predicates (bounded, large, close) report
// `inconclusive` rather than `refuted` when the search comes up empty:
// the witness may simply lie beyond the horizon.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballean/ballean.hpp"

namespace ballean {

template <class P, class R>
void require_element(const Ballean<P, R>& b, std::size_t x) {
  if (x >= b.size()) {
    throw DomainError(b.name() + ": element index " + std::to_string(x) + " is outside the truncation");
  }
}

template <class P, class R>
void require_radius(const Ballean<P, R>& b, const R& a) {
  if (!b.admits_radius(a)) {
    throw DomainError(b.name() + ": radius " + nlohmann::json(a).dump() + " is outside the truncation");
  }
}

/// B*(x, a) = {y : x in raw B(y, a)}, by a scan of every element.
template <class P, class R>
ElementSet star_ball(const Ballean<P, R>& b, std::size_t x, const R& a) {
  require_element(b, x);
  require_radius(b, a);
  ElementSet out = b.empty_set();
  for (std::size_t y = 0; y < b.size(); ++y) {
    if (b.raw_contains(y, a, x)) out.set(y);
  }
  return out;
}

/// Symmetrized ball B(x, a) n B*(x, a).
template <class P, class R>
ElementSet ball(const Ballean<P, R>& b, std::size_t x, const R& a) {
  require_element(b, x);
  require_radius(b, a);
  ElementSet out = b.raw_ball(x, a);
  for_each_member(ElementSet(out), [&](std::size_t y) {
    if (!b.raw_contains(y, a, x)) out.reset(y);
  });
  return out;
}

/// y in B(x, a) for the symmetrized ball, without materializing it.
template <class P, class R>
bool contains(const Ballean<P, R>& b, std::size_t x, const R& a, std::size_t y) {
  return b.raw_contains(x, a, y) && b.raw_contains(y, a, x);
}

/// B(A, a) = union of B(x, a) over x in A.
template <class P, class R>
ElementSet set_ball(const Ballean<P, R>& b, const ElementSet& A, const R& a) {
  if (A.none()) throw DomainError(b.name() + ": set_ball of an empty set");
  ElementSet out = b.empty_set();
  for_each_member(A, [&](std::size_t x) { out |= ball(b, x, a); });
  return out;
}

/// True iff B(x, a) is contained in B(x, c) for every enumerated x.
template <class P, class R>
bool radius_leq(const Ballean<P, R>& b, const R& a, const R& c) {
  require_radius(b, a);
  require_radius(b, c);
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (!ball(b, x, a).is_subset_of(ball(b, x, c))) return false;
  }
  return true;
}

/// Searches (radius, center) in enumeration order for Y inside one ball.
template <class P, class R>
WitnessReport is_bounded(const Ballean<P, R>& b, const ElementSet& Y) {
  if (Y.none()) throw DomainError(b.name() + ": is_bounded of an empty set");
  WitnessReport rep{Verdict::inconclusive, {}, b.truncation(), {}};
  for (const auto& a : b.witness_radii()) {
    for (std::size_t x = 0; x < b.size(); ++x) {
      if (Y.is_subset_of(ball(b, x, a))) {
        rep.verdict = Verdict::certified;
        rep.add("center", b.element(x)).add("radius", a);
        return rep;
      }
    }
  }
  rep.note = "no enumerated ball covers the set";
  return rep;
}

/// Searches a radius a with B(Y, a) = X.
template <class P, class R>
WitnessReport is_large(const Ballean<P, R>& b, const ElementSet& Y) {
  if (Y.none()) throw DomainError(b.name() + ": is_large of an empty set");
  WitnessReport rep{Verdict::inconclusive, {}, b.truncation(), {}};
  for (const auto& a : b.witness_radii()) {
    if (set_ball(b, Y, a).all()) {
      rep.verdict = Verdict::certified;
      rep.add("radius", a);
      return rep;
    }
  }
  rep.note = "no enumerated radius makes the set large";
  return rep;
}

/// Y is contained in B(Z, a): every y sees some z. Stops at the first miss.
template <class P, class R>
bool inside_neighbourhood(const Ballean<P, R>& b, const ElementSet& Y, const ElementSet& Z, const R& a) {
  const auto zs = members_of(Z);
  for (auto y = Y.find_first(); y != ElementSet::npos; y = Y.find_next(y)) {
    bool seen = false;
    for (auto z : zs) {
      if (contains(b, z, a, y)) {
        seen = true;
        break;
      }
    }
    if (!seen) return false;
  }
  return true;
}

/// Y and Z are mutually within radius a.
template <class P, class R>
bool close_at(const Ballean<P, R>& b, const ElementSet& Y, const ElementSet& Z, const R& a) {
  return inside_neighbourhood(b, Y, Z, a) && inside_neighbourhood(b, Z, Y, a);
}

template <class P, class R>
WitnessReport are_close(const Ballean<P, R>& b, const ElementSet& Y, const ElementSet& Z) {
  if (Y.none() || Z.none()) throw DomainError(b.name() + ": are_close of an empty set");
  WitnessReport rep{Verdict::inconclusive, {}, b.truncation(), {}};
  for (const auto& a : b.witness_radii()) {
    if (close_at(b, Y, Z, a)) {
      rep.verdict = Verdict::certified;
      rep.add("radius", a);
      return rep;
    }
  }
  rep.note = "no enumerated radius makes the sets close";
  return rep;
}

/// B_Y: support Y, same radii, balls clipped to Y.
template <class P, class R>
Ballean<P, R> subballean(const Ballean<P, R>& b, const ElementSet& Y) {
  if (Y.none()) throw DomainError(b.name() + ": subballean of an empty set");
  auto parent_index = std::make_shared<std::vector<std::size_t>>(members_of(Y));
  auto local_index = std::make_shared<std::vector<long>>(b.size(), -1);
  for (std::size_t i = 0; i < parent_index->size(); ++i) (*local_index)[(*parent_index)[i]] = static_cast<long>(i);

  typename Ballean<P, R>::Definition def;
  def.name = b.name() + "|Y";
  def.truncation = b.truncation();
  for (auto i : *parent_index) def.elements.push_back(b.element(i));
  def.radii = b.radii();
  def.witness_radii = b.witness_radii();
  def.finite_sets_bounded = b.finite_sets_bounded();
  def.admits_radius = [b](const R& a) { return b.admits_radius(a); };
  def.raw_ball = [b, parent_index, local_index](std::size_t x, const R& a) {
    ElementSet out(parent_index->size());
    for_each_member(ball(b, (*parent_index)[x], a), [&](std::size_t y) {
      if ((*local_index)[y] >= 0) out.set(static_cast<std::size_t>((*local_index)[y]));
    });
    return out;
  };
  def.raw_contains = [b, parent_index](std::size_t x, const R& a, std::size_t y) {
    return contains(b, (*parent_index)[x], a, (*parent_index)[y]);
  };
  return Ballean<P, R>(std::move(def));
}

/// Ball-by-ball equality of two balleans under a point bijection and a
/// radius translation, over every enumerated radius of `a`.
template <class P1, class R1, class P2, class R2, class PointMap, class RadiusMap>
std::optional<std::pair<std::size_t, R1>> first_ball_mismatch(const Ballean<P1, R1>& a, const Ballean<P2, R2>& b,
                                                              PointMap&& point_map, RadiusMap&& radius_map) {
  std::vector<std::size_t> to_b(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) to_b[x] = b.require_index(point_map(a.element(x)));
  for (const auto& r : a.radii()) {
    const R2 r2 = radius_map(r);
    for (std::size_t x = 0; x < a.size(); ++x) {
      ElementSet mapped = b.empty_set();
      for_each_member(ball(a, x, r), [&](std::size_t y) { mapped.set(to_b[y]); });
      if (mapped != ball(b, to_b[x], r2)) return std::make_pair(x, r);
    }
  }
  return std::nullopt;
}

/// Same support, same balls at every enumerated radius.
template <class P, class R>
bool same_balls(const Ballean<P, R>& a, const Ballean<P, R>& b) {
  if (a.elements() != b.elements()) return false;
  return !first_ball_mismatch(a, b, [](const P& p) { return p; }, [](const R& r) { return r; });
}

// Replay: re-evaluate the defining condition from a certified report.

template <class P, class R>
std::optional<std::size_t> element_from_json(const Ballean<P, R>& b, const nlohmann::json& j) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (nlohmann::json(b.element(i)) == j) return i;
  }
  return std::nullopt;
}

template <class P, class R>
bool replay_bounded(const Ballean<P, R>& b, const ElementSet& Y, const WitnessReport& rep) {
  const auto* c = rep.find("center");
  const auto* r = rep.find("radius");
  if (!rep.certified() || c == nullptr || r == nullptr) return false;
  auto x = element_from_json(b, *c);
  return x && Y.is_subset_of(ball(b, *x, r->get<R>()));
}

template <class P, class R>
bool replay_large(const Ballean<P, R>& b, const ElementSet& Y, const WitnessReport& rep) {
  const auto* r = rep.find("radius");
  return rep.certified() && r != nullptr && set_ball(b, Y, r->get<R>()).all();
}

template <class P, class R>
bool replay_close(const Ballean<P, R>& b, const ElementSet& Y, const ElementSet& Z, const WitnessReport& rep) {
  const auto* r = rep.find("radius");
  return rep.certified() && r != nullptr && close_at(b, Y, Z, r->get<R>());
}

}  // namespace ballean
