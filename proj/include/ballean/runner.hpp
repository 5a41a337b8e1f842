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

// Executes a parsed scenario. Parameters are resolved against the
// instantiated family before any check runs, so a bad element or radius
// is reported as a positioned scenario error rather than halfway through
// a report.

#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "ballean/analysis.hpp"
#include "ballean/families.hpp"
#include "ballean/hyperballean.hpp"
#include "ballean/morphisms.hpp"
#include "ballean/scenario.hpp"

namespace ballean {

inline constexpr std::string_view kToolName = "ballean-lab";
inline constexpr std::string_view kToolVersion = "0.1.0";

using AnyBallean = std::variant<Ballean<std::size_t, FinSet>, Ballean<BitVector, FinSet>, Ballean<std::size_t, Rational>,
                                Ballean<DoubledPoint, FinSet>, Ballean<FinSet, FinSet>, Ballean<FinSet, Rational>>;

inline MetricTable metric_by_name(const std::string& name) {
  if (name == "line") return line_metric();
  if (name == "pow2") return pow2_metric();
  throw DomainError("unknown metric '" + name + "'");
}

/// Instantiates the scenario's family at `universe` elements (base elements
/// for hyper-of families). Oversized truncations raise ResourceError.
inline AnyBallean make_family(const Scenario& s, std::size_t universe) {
  Truncation t = s.truncation;
  t.universe_size = universe;
  const auto base = s.base_family();
  if (base == "metric" && *s.metric == "pow2" && universe > 62) {
    throw ResourceError("pow2 distances overflow beyond 62 points", universe);
  }
  auto lift = [&](auto b) -> AnyBallean {
    if (s.is_hyper()) return hyperballean(b);
    return b;
  };
  if (base == "f_ballean") return lift(f_ballean(t));
  if (base == "q_ballean") return lift(q_ballean(t));
  if (base == "doubled") return lift(doubled_ballean(t));
  if (base == "metric") return lift(metric_ballean(metric_by_name(*s.metric), t, s.extra_radii));
  throw DomainError("unknown family '" + s.family + "'");
}

// --- Parameter resolution -----------------------------------------------------

namespace detail {

template <class R>
R radius_from(const Value& v, Position at) {
  if constexpr (std::is_same_v<R, FinSet>) {
    if (v.kind != Value::Kind::set) throw ScenarioError(at, "this family takes set radii {a,b,...}");
    FinSet f;
    for (auto m : v.members) {
      if (m >= static_cast<std::int64_t>(kMaxUniverse)) throw ScenarioError(at, "radius member out of range");
      f.insert(static_cast<std::size_t>(m));
    }
    return f;
  } else {
    if (!v.is_number() || v.rational < Rational(0)) throw ScenarioError(at, "this family takes non-negative number radii");
    return v.rational;
  }
}

template <class P, class R>
R resolve_radius(const Ballean<P, R>& b, const Value& v, Position at) {
  R r = radius_from<R>(v, at);
  if (!b.admits_radius(r)) throw ScenarioError(at, "radius " + format_value(v) + " is outside the truncation");
  return r;
}

inline FinSet finset_from(const Value& v, Position at) {
  if (v.kind != Value::Kind::set) throw ScenarioError(at, "expected a set {a,b,...}");
  FinSet f;
  for (auto m : v.members) {
    if (m >= static_cast<std::int64_t>(kMaxUniverse)) throw ScenarioError(at, "set member out of range");
    f.insert(static_cast<std::size_t>(m));
  }
  return f;
}

template <class P, class R>
std::size_t resolve_element(const Ballean<P, R>& b, const Value& v, Position at) {
  std::optional<std::size_t> idx;
  if constexpr (std::is_same_v<P, std::size_t>) {
    if (v.kind != Value::Kind::integer || v.integer < 0) throw ScenarioError(at, "elements of this family are integers");
    idx = b.index_of(static_cast<std::size_t>(v.integer));
  } else if constexpr (std::is_same_v<P, FinSet>) {
    const auto f = finset_from(v, at);
    if (f.empty()) throw ScenarioError(at, "hyperballean elements are non-empty sets");
    idx = b.index_of(f);
  } else if constexpr (std::is_same_v<P, BitVector>) {
    const auto f = finset_from(v, at);
    const auto len = b.element(0).length();
    if (!f.fits(len)) throw ScenarioError(at, "support " + format_value(v) + " does not fit the word length");
    idx = b.index_of(BitVector(len, f));
  } else {
    if (v.kind != Value::Kind::list || v.items.size() != 2 || v.items[0].kind != Value::Kind::integer ||
        v.items[1].kind != Value::Kind::integer || v.items[0].integer < 0 || v.items[1].integer < 0) {
      throw ScenarioError(at, "elements of this family are pairs [m, layer]");
    }
    idx = b.index_of(DoubledPoint{static_cast<std::size_t>(v.items[0].integer),
                                  static_cast<unsigned>(v.items[1].integer)});
  }
  if (!idx) throw ScenarioError(at, "element " + format_value(v) + " is outside the truncation");
  return *idx;
}

inline std::size_t generator_arg(const Value& v, Position at) {
  if (v.items.size() != 1 || v.items[0].kind != Value::Kind::integer || v.items[0].integer < 0) {
    throw ScenarioError(at, v.word + "(...) takes one non-negative integer");
  }
  return static_cast<std::size_t>(v.items[0].integer);
}

/// Element set from a list literal or a generator word.
template <class P, class R>
ElementSet resolve_elements(const Ballean<P, R>& b, const Value& v, Position at, bool allow_empty = false) {
  ElementSet out = b.empty_set();
  if (v.kind == Value::Kind::list) {
    for (const auto& item : v.items) out.set(resolve_element(b, item, at));
  } else if (v.kind == Value::Kind::word) {
    auto select = [&](auto&& pred) {
      for (std::size_t i = 0; i < b.size(); ++i) out[i] = pred(b.element(i));
    };
    auto unsupported = [&]() -> ScenarioError {
      return ScenarioError(at, "generator " + format_value(v) + " does not apply to this family");
    };
    const auto& w = v.word;
    if (w == "all" && !v.call) {
      out.set();
    } else if ((w == "evens" || w == "odds") && !v.call) {
      if constexpr (std::is_same_v<P, std::size_t>) {
        const std::size_t parity = w == "evens" ? 0 : 1;
        select([&](std::size_t x) { return x % 2 == parity; });
      } else {
        throw unsupported();
      }
    } else if (w == "layer") {
      const auto layer = generator_arg(v, at);
      if constexpr (std::is_same_v<P, DoubledPoint>) {
        if (layer > 1) throw ScenarioError(at, "layer must be 0 or 1");
        select([&](const DoubledPoint& p) { return p.layer == layer; });
      } else {
        throw unsupported();
      }
    } else if (w == "m_class" || w == "k_subsets") {
      const auto n = generator_arg(v, at);
      if constexpr (std::is_same_v<P, FinSet>) {
        if (w == "m_class") {
          select([&](const FinSet& f) { return f.min() == n; });
        } else {
          select([&](const FinSet& f) { return f.size() == n; });
        }
      } else {
        throw unsupported();
      }
    } else if (w == "containing") {
      const auto x = generator_arg(v, at);
      if constexpr (std::is_same_v<P, FinSet>) {
        select([&](const FinSet& f) { return f.contains(x); });
      } else if constexpr (std::is_same_v<P, BitVector>) {
        select([&](const BitVector& u) { return u.support().contains(x); });
      } else {
        throw unsupported();
      }
    } else {
      throw ScenarioError(at, "unknown generator '" + format_value(v) + "'");
    }
  } else {
    throw ScenarioError(at, "expected a list [..] or a generator");
  }
  if (!allow_empty && out.none()) throw ScenarioError(at, format_value(v) + " selects no elements");
  return out;
}

template <class P, class R>
nlohmann::json elements_json(const Ballean<P, R>& b, const std::vector<std::size_t>& xs) {
  auto arr = nlohmann::json::array();
  for (auto x : xs) arr.push_back(b.element(x));
  return arr;
}

using Job = std::function<WitnessReport()>;

/// Family at another universe size, or the construction failure as text.
using FamilyFactory = std::function<AnyBallean(std::size_t)>;

template <class P, class R>
const Ballean<P, R>& same_kind(const AnyBallean& any) {
  return std::get<Ballean<P, R>>(any);
}

template <class P, class R>
Job prepare_check(const Ballean<P, R>& b, const Scenario& s, const CheckSpec& c, const FamilyFactory& at_size,
                  unsigned jobs) {
  auto elems = [&](const std::string& key, bool allow_empty = false) {
    return resolve_elements(b, *c.param(key), c.where(key), allow_empty);
  };
  auto radius = [&](const std::string& key) { return resolve_radius(b, *c.param(key), c.where(key)); };
  auto element = [&](const std::string& key) { return resolve_element(b, *c.param(key), c.where(key)); };
  const auto& name = c.name;

  if (name == "check_axioms") return [b, jobs] { return check_axioms(b, jobs); };

  if (name == "ulf_profile") {
    std::optional<ElementSet> centers;
    std::optional<Value> centers_value;
    if (c.param("centers")) {
      centers = elems("centers");
      centers_value = *c.param("centers");
    }
    const Position centers_at = c.where("centers");
    const bool compare = s.compare_universe_size.has_value();
    const std::size_t other = s.compare_size();
    return [b, centers, centers_value, centers_at, compare, other, at_size, jobs] {
      WitnessReport rep{Verdict::certified, {}, b.truncation(), {}};
      const auto profile = ulf_profile(b, centers, jobs);
      rep.add("profile", profile);
      if (!compare) return rep;
      const auto large_any = at_size(other);
      const auto& large = same_kind<P, R>(large_any);
      std::optional<ElementSet> large_centers;
      if (centers_value) large_centers = resolve_elements(large, *centers_value, centers_at);
      const auto large_profile = ulf_profile(large, large_centers, jobs);
      const auto grown = ulf_divergence(profile, large_profile);
      rep.add("compare_profile", large_profile).add("compare_universe_size", other);
      auto g = nlohmann::json::array();
      for (const auto& r : grown) g.push_back(r);
      rep.add("divergent_radii", g);
      if (!grown.empty()) {
        rep.verdict = Verdict::inconclusive;
        rep.note = "maximum ball size grows with the universe";
      }
      return rep;
    };
  }

  if (name == "is_bounded") return [b, y = elems("set")] { return is_bounded(b, y); };
  if (name == "is_large") return [b, y = elems("set")] { return is_large(b, y); };
  if (name == "are_close") return [b, y = elems("left"), z = elems("right")] { return are_close(b, y, z); };

  if (name == "is_alpha_discrete") {
    return [b, set = elems("set"), a = radius("alpha")] {
      WitnessReport rep{Verdict::certified, {}, b.truncation(), {}};
      rep.add("alpha", a);
      const auto xs = members_of(set);
      for (auto x : xs) {
        for (auto y : xs) {
          if (x != y && contains(b, x, a, y)) {
            rep.verdict = Verdict::refuted;
            rep.note = "two members see each other";
            rep.add("pair", nlohmann::json::array({b.element(x), b.element(y)}));
            return rep;
          }
        }
      }
      rep.add("set", element_set_json(b, set));
      return rep;
    };
  }

  if (name == "max_discrete_in_ball") {
    return [b, x = element("center"), beta = radius("beta"), a = radius("alpha")] {
      WitnessReport rep{Verdict::certified, {}, b.truncation(), {}};
      rep.add("bound", max_discrete_in_ball(b, x, beta, a));
      rep.add("center", b.element(x)).add("beta", beta).add("alpha", a);
      return rep;
    };
  }

  if (name == "bounded_geometry") {
    return [b, other = s.compare_size(), at_size, jobs] {
      const auto large_any = at_size(other);
      return bounded_geometry_search(b, same_kind<P, R>(large_any), jobs).report;
    };
  }

  if (name == "find_isolated_balls") {
    ElementSet beyond = c.param("beyond") ? elems("beyond", true) : b.empty_set();
    const std::string expect = c.param("expect") ? c.param("expect")->word : "any";
    return [b, beyond, expect, a = radius("alpha"), jobs] {
      WitnessReport rep{Verdict::certified, {}, b.truncation(), {}};
      const auto found = find_isolated_balls(b, a, beyond, jobs);
      rep.add("alpha", a).add("isolated", elements_json(b, found)).add("count", found.size());
      if ((expect == "empty" && !found.empty()) || (expect == "nonempty" && found.empty())) {
        rep.verdict = Verdict::refuted;
        rep.note = "isolated list is not " + expect;
      }
      return rep;
    };
  }

  if (name == "scattered_witness") {
    const auto set = elems("set");
    const auto y = element("y");
    if (!set.test(y)) throw ScenarioError(c.where("y"), "y must belong to set");
    return [b, set, y, a = radius("alpha"), beta = radius("beta")] {
      const bool ok = scattered_witness_check(b, set, a, beta, y);
      WitnessReport rep{ok ? Verdict::certified : Verdict::refuted, {}, b.truncation(), {}};
      rep.add("alpha", a).add("beta", beta).add("y", b.element(y));
      if (!ok) {
        const auto annulus = (ball(b, y, beta) - ball(b, y, a)) & set;
        rep.note = "annulus meets the set";
        rep.add("annulus", element_set_json(b, annulus));
      }
      return rep;
    };
  }

  if constexpr (std::is_same_v<P, FinSet>) {
    if (name == "hyperball") {
      return [b, h = element("center"), a = radius("radius")] {
        WitnessReport rep{Verdict::certified, {}, b.truncation(), {}};
        const auto sets = hyperball_sets(b, b.element(h), a);
        rep.add("center", b.element(h)).add("radius", a).add("members", sets).add("size", sets.size());
        return rep;
      };
    }
    if constexpr (std::is_same_v<R, FinSet>) {
      if (name == "kn_scatter") {
        const auto n = static_cast<std::size_t>(c.param("n")->integer);
        const auto beta = radius("beta");
        ElementSet set = b.empty_set();
        if (c.param("set")) {
          set = elems("set");
        } else {
          for (std::size_t i = 0; i < b.size(); ++i) set[i] = b.element(i).size() == n;
          if (set.none()) throw ScenarioError(c.where("n"), "no " + std::to_string(n) + "-sets at this truncation");
        }
        std::vector<FinSet> ys;
        for_each_member(set, [&](std::size_t i) { ys.push_back(b.element(i)); });
        for (const auto& f : ys) {
          if (f.size() != n) throw ScenarioError(c.where("set"), "member " + to_string(f) + " is not an n-set");
        }
        return [b, n, ys, beta] { return kn_scatter_strategy(b, n, ys, beta).second; };
      }
      if (name == "asymorphism") {
        const bool chi_map = c.param("map")->is_word("chi");
        const std::size_t n = c.param("n") ? static_cast<std::size_t>(c.param("n")->integer) : 0;
        const auto t = s.truncation;
        if (!chi_map && n + 1 >= t.universe_size) throw ScenarioError(c.where("n"), "n must be below universe_size - 1");
        return [t, chi_map, n] {
          return chi_map ? chi_asymorphism(t.universe_size, t.radius_budget)
                         : mn_asymorphism(t.universe_size, n, t.radius_budget);
        };
      }
    }
  }

  if constexpr (std::is_same_v<P, BitVector>) {
    if (name == "embedding_identity") {
      const auto k = finset_from(*c.param("K"), c.where("K"));
      if (k.empty()) throw ScenarioError(c.where("K"), "K must be non-empty");
      for (auto m : k.members()) {
        if (m == 0 || m % 2 != 0) throw ScenarioError(c.where("K"), "K must hold even numbers >= 2");
      }
      const auto n = static_cast<std::size_t>(c.param("n")->integer);
      return [k, n, t = s.truncation] { return verify_embedding_identity(k, n, t); };
    }
  }

  throw ScenarioError(c.position, "check " + name + " does not apply to family " + s.family);
}

}  // namespace detail

/// Runs every check in order. Scenario-level problems (unknown elements,
/// radii outside the truncation) raise ScenarioError before anything runs;
/// resource errors are recorded on the affected check.
inline nlohmann::json run_scenario(const Scenario& s, unsigned jobs = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<AnyBallean> family;
  std::string family_error;
  try {
    family = make_family(s, s.truncation.universe_size);
  } catch (const ResourceError& e) {
    family_error = e.what();
  } catch (const ConstructionError& e) {
    family_error = e.what();
  }
  const detail::FamilyFactory at_size = [&s](std::size_t n) { return make_family(s, n); };

  std::vector<detail::Job> prepared;
  if (family) {
    for (const auto& c : s.checks) {
      prepared.push_back(std::visit([&](const auto& b) { return detail::prepare_check(b, s, c, at_size, jobs); }, *family));
    }
  }

  auto checks = nlohmann::json::array();
  std::size_t certified = 0, refuted = 0, inconclusive = 0;
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    const auto& c = s.checks[i];
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : c.params) params[k] = format_value(v);
    nlohmann::json entry{{"name", c.name}, {"params", params}};
    const auto start = std::chrono::steady_clock::now();
    WitnessReport rep{Verdict::inconclusive, {}, s.truncation, {}};
    if (!family) {
      entry["error"] = family_error;
      rep.note = "family could not be instantiated";
    } else {
      try {
        rep = prepared[i]();
      } catch (const ResourceError& e) {
        rep = WitnessReport{Verdict::inconclusive, {}, s.truncation, "resource limit reached"};
        entry["error"] = e.what();
      } catch (const ConstructionError& e) {
        rep = WitnessReport{Verdict::inconclusive, {}, s.truncation, "comparison family could not be instantiated"};
        entry["error"] = e.what();
      }
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const nlohmann::json body = rep;
    for (const auto& [k, v] : body.items()) entry[k] = v;
    entry["wall_clock_ms"] = ms;
    switch (rep.verdict) {
      case Verdict::certified: ++certified; break;
      case Verdict::refuted: ++refuted; break;
      case Verdict::inconclusive: ++inconclusive; break;
    }
    checks.push_back(std::move(entry));
  }
  const int exit_code = refuted > 0 ? 1 : inconclusive > 0 ? 2 : 0;
  const auto total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return nlohmann::json{
      {"checks", checks},
      {"scenario", scenario_json(s)},
      {"summary",
       {{"certified", certified},
        {"refuted", refuted},
        {"inconclusive-at-horizon", inconclusive},
        {"exit_code", exit_code},
        {"wall_clock_ms", total}}},
      {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
  };
}

/// Copy of a report with every wall_clock_ms field removed.
inline nlohmann::json strip_timing(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("wall_clock_ms");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

inline int report_exit_code(const nlohmann::json& report) { return report.at("summary").at("exit_code").get<int>(); }

}  // namespace ballean
