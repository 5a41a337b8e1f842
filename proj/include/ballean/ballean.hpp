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
#include <cstddef>
#include <functional>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include "ballean/types.hpp"

namespace ballean {

/// Finite stand-in for an infinite support.
///
/// `universe_size` is the number of base points (N), `radius_budget` bounds
/// the radii a sweep quantifies over, and `witness_horizon` bounds the radii
/// a witness search may propose. Searching further than we sweep is what
/// lets a composition witness like F1 u F2 be found for every swept pair.
struct Truncation {
  std::size_t universe_size = 1;
  std::size_t radius_budget = 0;
  std::size_t witness_horizon = 0;

  void validate() const {
    if (universe_size < 1) throw DomainError("truncation universe_size must be >= 1");
    if (witness_horizon < radius_budget) {
      throw DomainError("truncation witness_horizon (" + std::to_string(witness_horizon) +
                        ") is below radius_budget (" + std::to_string(radius_budget) + ")");
    }
  }
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

inline Truncation make_truncation(std::size_t n, std::size_t budget, std::optional<std::size_t> horizon = {}) {
  Truncation t{n, budget, horizon.value_or(budget)};
  t.validate();
  return t;
}

inline void to_json(nlohmann::json& j, const Truncation& t) {
  j = {{"universe_size", t.universe_size}, {"radius_budget", t.radius_budget}, {"witness_horizon", t.witness_horizon}};
}

enum class Verdict { certified, refuted, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive-at-horizon";
  }
  return "?";
}

struct Witness {
  std::string role;
  nlohmann::json value;
};

/// Outcome of a checker. A certified report always carries the witnesses
/// needed to replay the defining condition.
struct WitnessReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<Witness> witnesses;
  Truncation truncation;
  std::string note;

  bool certified() const { return verdict == Verdict::certified; }
  const nlohmann::json* find(std::string_view role) const {
    for (const auto& w : witnesses) {
      if (w.role == role) return &w.value;
    }
    return nullptr;
  }
  WitnessReport& add(std::string role, nlohmann::json value) {
    witnesses.push_back({std::move(role), std::move(value)});
    return *this;
  }
};

inline void to_json(nlohmann::json& j, const WitnessReport& r) {
  auto ws = nlohmann::json::array();
  for (const auto& w : r.witnesses) ws.push_back({{"role", w.role}, {"value", w.value}});
  j = {{"verdict", to_string(r.verdict)}, {"witnesses", ws}, {"truncation", r.truncation}};
  if (!r.note.empty()) j["note"] = r.note;
}

/// Subset of a ballean's enumerated elements, by element index.
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<std::size_t> members_of(const ElementSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

template <class F>
void for_each_member(const ElementSet& s, F&& f) {
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) f(i);
}

enum class ElementKind { index, finset, bitvector, pair };

template <class Point>
inline constexpr ElementKind element_kind_of = ElementKind::index;
template <>
inline constexpr ElementKind element_kind_of<FinSet> = ElementKind::finset;
template <>
inline constexpr ElementKind element_kind_of<BitVector> = ElementKind::bitvector;
template <>
inline constexpr ElementKind element_kind_of<DoubledPoint> = ElementKind::pair;

/// Splits [0, n) across `jobs` threads. Each index is visited exactly once;
/// callers write to per-index slots so results do not depend on `jobs`.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(jobs, n);
  std::mutex error_lock;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> hold(error_lock);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

/// A ball structure (X, P, B) enumerated at a truncation.
///
/// Families supply only the raw ball; everything in core works with the
/// symmetrized ball B(x,a) n B*(x,a). Handles are cheap to copy and share
/// immutable state, so they can be read from several threads at once.
template <class Point, class Radius>
class Ballean {
 public:
  using point_type = Point;
  using radius_type = Radius;
  using RawBallFn = std::function<ElementSet(std::size_t, const Radius&)>;
  using RawContainsFn = std::function<bool(std::size_t, const Radius&, std::size_t)>;
  using AdmitsFn = std::function<bool(const Radius&)>;

  static constexpr ElementKind element_kind = element_kind_of<Point>;

  struct Definition {
    std::string name;
    Truncation truncation;
    std::vector<Point> elements;
    std::vector<Radius> radii;
    std::vector<Radius> witness_radii;
    RawBallFn raw_ball;
    RawContainsFn raw_contains;  // optional; defaults to a raw_ball lookup
    AdmitsFn admits_radius;      // optional; defaults to accepting everything
    bool finite_sets_bounded = false;
  };

  explicit Ballean(Definition def) {
    if (def.elements.empty()) throw ConstructionError(def.name + ": empty support");
    if (!def.raw_ball) throw ConstructionError(def.name + ": missing ball function");
    auto state = std::make_shared<State>();
    for (std::size_t i = 0; i < def.elements.size(); ++i) {
      if (!state->index.emplace(def.elements[i], i).second) {
        throw ConstructionError(def.name + ": duplicate element at position " + std::to_string(i));
      }
    }
    check_distinct(def.radii, def.name);
    check_distinct(def.witness_radii, def.name);
    if (!def.raw_contains) {
      def.raw_contains = [f = def.raw_ball](std::size_t x, const Radius& a, std::size_t y) {
        return f(x, a).test(y);
      };
    }
    if (!def.admits_radius) def.admits_radius = [](const Radius&) { return true; };
    state->def = std::move(def);
    state_ = std::move(state);
  }

  const std::string& name() const { return state_->def.name; }
  const Truncation& truncation() const { return state_->def.truncation; }
  std::size_t size() const { return state_->def.elements.size(); }
  const std::vector<Point>& elements() const { return state_->def.elements; }
  const Point& element(std::size_t i) const { return state_->def.elements.at(i); }
  /// Radii swept by checkers (up to the radius budget).
  const std::vector<Radius>& radii() const { return state_->def.radii; }
  /// Radii a witness search may propose (up to the witness horizon).
  const std::vector<Radius>& witness_radii() const { return state_->def.witness_radii; }
  bool finite_sets_bounded() const { return state_->def.finite_sets_bounded; }
  bool admits_radius(const Radius& a) const { return state_->def.admits_radius(a); }

  std::optional<std::size_t> index_of(const Point& p) const {
    auto it = state_->index.find(p);
    if (it == state_->index.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require_index(const Point& p) const {
    auto i = index_of(p);
    if (!i) throw DomainError(name() + ": point " + nlohmann::json(p).dump() + " is outside the truncation");
    return *i;
  }

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const {
    ElementSet s(size());
    s.set();
    return s;
  }
  ElementSet set_of(const std::vector<Point>& points) const {
    ElementSet s(size());
    for (const auto& p : points) s.set(require_index(p));
    return s;
  }
  std::vector<Point> points_of(const ElementSet& s) const {
    std::vector<Point> out;
    for_each_member(s, [&](std::size_t i) { out.push_back(element(i)); });
    return out;
  }

  ElementSet raw_ball(std::size_t x, const Radius& a) const { return state_->def.raw_ball(x, a); }
  bool raw_contains(std::size_t x, const Radius& a, std::size_t y) const {
    return state_->def.raw_contains(x, a, y);
  }

 private:
  struct State {
    Definition def;
    std::map<Point, std::size_t> index;
  };

  static void check_distinct(const std::vector<Radius>& radii, const std::string& name) {
    auto sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConstructionError(name + ": duplicate radius in enumeration");
    }
  }

  std::shared_ptr<const State> state_;
};

/// Canonical JSON for an element set: element encodings, sorted.
template <class P, class R>
nlohmann::json element_set_json(const Ballean<P, R>& b, const ElementSet& s) {
  std::vector<nlohmann::json> items;
  for_each_member(s, [&](std::size_t i) { items.emplace_back(b.element(i)); });
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace ballean
