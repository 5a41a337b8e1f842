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

// Checkers for the global properties of a ballean: the axioms, uniform
// local finiteness, bounded geometry, isolated balls and asymptotic
// scatteredness. Every checker works on a finite truncation; properties
// that only make sense in the limit are either compared across two
// truncations or reduced to per-instance witness production.

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ballean/ballean.hpp"
#include "ballean/core.hpp"
#include "ballean/hyperballean.hpp"

namespace ballean {

// --- Axioms ---------------------------------------------------------------

namespace detail {

template <class P, class R>
std::vector<std::vector<ElementSet>> ball_table(const Ballean<P, R>& b, const std::vector<R>& radii, unsigned jobs) {
  std::vector<std::vector<ElementSet>> table(radii.size(), std::vector<ElementSet>(b.size()));
  parallel_for(radii.size() * b.size(), jobs, [&](std::size_t k) {
    const auto r = k / b.size();
    const auto x = k % b.size();
    table[r][x] = ball(b, x, radii[r]);
  });
  return table;
}

}  // namespace detail

/// Checks the ballean axioms at the truncation:
///  - x in raw B(x, a) for every x and swept a;
///  - for every swept (a, b) some witness radius g has B(B(x,a), b) c B(x,g)
///    for all x;
///  - every pair (x, y) is joined by some witness radius.
/// The B/B* interchange axiom holds by construction after symmetrization.
/// A missing composition or connecting radius refutes, naming the tuple.
template <class P, class R>
WitnessReport check_axioms(const Ballean<P, R>& b, unsigned jobs = 1) {
  WitnessReport rep{Verdict::refuted, {}, b.truncation(), {}};
  const auto& swept = b.radii();
  const auto& horizon = b.witness_radii();

  for (const auto& a : swept) {
    for (std::size_t x = 0; x < b.size(); ++x) {
      if (!b.raw_ball(x, a).test(x)) {
        rep.note = "x is missing from its own ball";
        rep.add("point", b.element(x)).add("radius", a);
        return rep;
      }
    }
  }

  const auto table = detail::ball_table(b, horizon, jobs);
  std::map<R, std::size_t> slot;
  for (std::size_t i = 0; i < horizon.size(); ++i) slot.emplace(horizon[i], i);
  auto balls_at = [&](const R& r) {
    if (auto it = slot.find(r); it != slot.end()) return table[it->second];
    std::vector<ElementSet> out(b.size());
    for (std::size_t x = 0; x < b.size(); ++x) out[x] = ball(b, x, r);
    return out;
  };

  // Composition: per swept pair, the first witness radius that absorbs it.
  const std::size_t pairs = swept.size() * swept.size();
  std::vector<long> gamma(pairs, -1);
  std::vector<std::vector<ElementSet>> swept_balls;
  swept_balls.reserve(swept.size());
  for (const auto& a : swept) swept_balls.push_back(balls_at(a));
  parallel_for(pairs, jobs, [&](std::size_t k) {
    const auto& inner = swept_balls[k / swept.size()];
    const auto& outer = swept_balls[k % swept.size()];
    std::vector<ElementSet> composed(b.size());
    for (std::size_t x = 0; x < b.size(); ++x) {
      ElementSet acc = b.empty_set();
      for_each_member(inner[x], [&](std::size_t y) { acc |= outer[y]; });
      composed[x] = std::move(acc);
    }
    for (std::size_t g = 0; g < horizon.size(); ++g) {
      bool ok = true;
      for (std::size_t x = 0; x < b.size() && ok; ++x) ok = composed[x].is_subset_of(table[g][x]);
      if (ok) {
        gamma[k] = static_cast<long>(g);
        return;
      }
    }
  });
  auto composition = nlohmann::json::array();
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto& a = swept[k / swept.size()];
    const auto& c = swept[k % swept.size()];
    if (gamma[k] < 0) {
      rep.note = "no witness radius absorbs the composition";
      rep.add("alpha", a).add("beta", c);
      return rep;
    }
    composition.push_back({a, c, horizon[static_cast<std::size_t>(gamma[k])]});
  }

  // Connectivity: the first witness radius joining each pair.
  std::vector<long> join(b.size() * b.size(), -1);
  parallel_for(b.size(), jobs, [&](std::size_t x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      for (std::size_t g = 0; g < horizon.size(); ++g) {
        if (table[g][x].test(y)) {
          join[x * b.size() + y] = static_cast<long>(g);
          break;
        }
      }
    }
  });
  std::size_t widest = 0;
  for (std::size_t k = 0; k < join.size(); ++k) {
    if (join[k] < 0) {
      rep.note = "no witness radius joins the pair";
      rep.add("point", b.element(k / b.size())).add("other", b.element(k % b.size()));
      return rep;
    }
    widest = std::max(widest, static_cast<std::size_t>(join[k]));
  }

  rep.verdict = Verdict::certified;
  rep.add("composition", std::move(composition));
  rep.add("connecting_radius_bound", horizon[widest]);
  return rep;
}

// --- Uniform local finiteness -----------------------------------------------

/// Per-radius maximum ball size over the swept centers; the profile itself
/// is the candidate bound n(b).
template <class R>
struct ULFProfile {
  std::vector<std::pair<R, std::size_t>> max_ball;

  std::optional<std::size_t> at(const R& r) const {
    for (const auto& [k, v] : max_ball) {
      if (k == r) return v;
    }
    return std::nullopt;
  }
};

template <class R>
void to_json(nlohmann::json& j, const ULFProfile<R>& p) {
  j = nlohmann::json::array();
  for (const auto& [r, v] : p.max_ball) j.push_back({{"radius", r}, {"max_ball", v}});
}

template <class P, class R>
ULFProfile<R> ulf_profile(const Ballean<P, R>& b, const std::optional<ElementSet>& centers = std::nullopt,
                          unsigned jobs = 1) {
  const auto& radii = b.radii();
  const auto xs = centers ? members_of(*centers) : members_of(b.full_set());
  std::vector<std::size_t> best(radii.size(), 0);
  parallel_for(radii.size(), jobs, [&](std::size_t r) {
    for (auto x : xs) best[r] = std::max(best[r], ball(b, x, radii[r]).count());
  });
  ULFProfile<R> out;
  for (std::size_t r = 0; r < radii.size(); ++r) out.max_ball.emplace_back(radii[r], best[r]);
  return out;
}

/// Radii present in both profiles whose maximum grew from `small` to
/// `large`. Growth between two truncations is a divergence signal only.
template <class R>
std::vector<R> ulf_divergence(const ULFProfile<R>& small, const ULFProfile<R>& large) {
  std::vector<R> out;
  for (const auto& [r, v] : small.max_ball) {
    if (auto w = large.at(r); w && *w > v) out.push_back(r);
  }
  return out;
}

/// Growth sets: X_n = {x_0..x_n} and X_{n,i} = X_n u {y_i}.
/// Inputs are base indices; `partners[i]` lies in B(centers[i], a).
struct GrowthSets {
  std::vector<FinSet> x;                // x[n] = X_n
  std::vector<std::vector<FinSet>> xi;  // xi[n][i] = X_{n,i}, i <= n
};

inline GrowthSets growth_sets(const std::vector<std::size_t>& centers, const std::vector<std::size_t>& partners) {
  if (centers.size() != partners.size()) throw DomainError("growth_sets: centers and partners differ in length");
  GrowthSets g;
  FinSet acc;
  for (std::size_t n = 0; n < centers.size(); ++n) {
    acc.insert(centers[n]);
    g.x.push_back(acc);
    std::vector<FinSet> row;
    for (std::size_t i = 0; i <= n; ++i) row.push_back(acc.with(partners[i]));
    g.xi.push_back(std::move(row));
  }
  return g;
}

/// Certifies X_{n,i} in B#(X_n, a) for all i <= n and that the X_{n,i}
/// are pairwise distinct, so |B#(X_n, a)| > n at every level.
template <class R>
WitnessReport growth_witness(const Ballean<FinSet, R>& hyper, const GrowthSets& g, const R& a) {
  WitnessReport rep{Verdict::refuted, {}, hyper.truncation(), {}};
  auto sizes = nlohmann::json::array();
  for (std::size_t n = 0; n < g.x.size(); ++n) {
    const auto xn = hyper.require_index(g.x[n]);
    std::set<FinSet> distinct(g.xi[n].begin(), g.xi[n].end());
    if (distinct.size() != n + 1) {
      rep.note = "growth sets collide";
      rep.add("level", n);
      return rep;
    }
    for (const auto& s : g.xi[n]) {
      if (!contains(hyper, xn, a, hyper.require_index(s))) {
        rep.note = "growth set outside the hyperball";
        rep.add("level", n).add("set", s);
        return rep;
      }
    }
    sizes.push_back(ball(hyper, xn, a).count());
  }
  rep.verdict = Verdict::certified;
  rep.add("radius", a).add("ball_sizes", std::move(sizes));
  return rep;
}

// --- Discreteness and bounded geometry -------------------------------------

/// B(x, a) n S = {x} for each x in S.
template <class P, class R>
bool is_alpha_discrete(const Ballean<P, R>& b, const ElementSet& s, const R& a) {
  if (s.none()) throw DomainError(b.name() + ": is_alpha_discrete of an empty set");
  const auto xs = members_of(s);
  for (auto x : xs) {
    for (auto y : xs) {
      if (x != y && contains(b, x, a, y)) return false;
    }
  }
  return true;
}

/// Size of the largest a-discrete subset of a ball: exact, or an interval
/// when the ball is too big for exhaustive search.
struct DiscreteBound {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact() const { return lower == upper; }
  friend bool operator==(const DiscreteBound&, const DiscreteBound&) = default;
};

inline void to_json(nlohmann::json& j, const DiscreteBound& d) {
  if (d.exact()) {
    j = d.lower;
  } else {
    j = {{"lower", d.lower}, {"upper", d.upper}};
  }
}

inline constexpr std::size_t kExactDiscreteLimit = 20;

namespace detail {

// Maximum independent set on at most 32 vertices given adjacency masks.
inline std::size_t max_independent(const std::vector<std::uint32_t>& adj, std::uint32_t cand) {
  if (cand == 0) return 0;
  // Isolated vertices in the candidate set are always taken.
  std::size_t free = 0;
  std::uint32_t rest = cand;
  for (std::uint32_t m = cand; m != 0; m &= m - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(m));
    if ((adj[v] & cand) == 0) {
      ++free;
      rest &= ~(std::uint32_t{1} << v);
    }
  }
  if (rest == 0) return free;
  // Branch on a vertex of maximum degree.
  std::size_t pick = 0;
  int best = -1;
  for (std::uint32_t m = rest; m != 0; m &= m - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(m));
    const int deg = std::popcount(adj[v] & rest);
    if (deg > best) {
      best = deg;
      pick = v;
    }
  }
  const std::uint32_t bit = std::uint32_t{1} << pick;
  const auto without = max_independent(adj, rest & ~bit);
  const auto with = 1 + max_independent(adj, rest & ~bit & ~adj[pick]);
  return free + std::max(without, with);
}

}  // namespace detail

template <class P, class R>
DiscreteBound max_discrete_in_ball(const Ballean<P, R>& b, std::size_t x, const R& beta, const R& alpha) {
  const auto pts = members_of(ball(b, x, beta));
  const std::size_t k = pts.size();
  auto conflict = [&](std::size_t i, std::size_t j) { return i != j && contains(b, pts[i], alpha, pts[j]); };

  // Greedy independent set below, greedy clique cover above.
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < k; ++i) {
    bool ok = true;
    for (auto c : chosen) ok = ok && !conflict(i, c);
    if (ok) chosen.push_back(i);
  }
  std::vector<std::vector<std::size_t>> cliques;
  for (std::size_t i = 0; i < k; ++i) {
    bool placed = false;
    for (auto& q : cliques) {
      bool all = true;
      for (auto c : q) all = all && conflict(i, c);
      if (all) {
        q.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) cliques.push_back({i});
  }
  DiscreteBound out{chosen.size(), cliques.size()};
  if (out.exact() || k > kExactDiscreteLimit) return out;

  std::vector<std::uint32_t> adj(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (conflict(i, j)) adj[i] |= std::uint32_t{1} << j;
    }
  }
  const auto best = detail::max_independent(adj, k == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << k) - 1));
  return {best, best};
}

/// a and the per-radius bound f(b) of the bounded-geometry definition.
template <class R>
struct BGWitness {
  R alpha;
  std::vector<std::pair<R, DiscreteBound>> f_bound;
};

template <class R>
void to_json(nlohmann::json& j, const BGWitness<R>& w) {
  auto f = nlohmann::json::array();
  for (const auto& [r, v] : w.f_bound) f.push_back({{"radius", r}, {"bound", v}});
  j = {{"alpha", w.alpha}, {"f_bound", f}};
}

/// f(b) = max over x of max_discrete_in_ball(x, b, a), for each listed b.
template <class P, class R>
std::vector<std::pair<R, DiscreteBound>> discrete_bounds(const Ballean<P, R>& b, const R& alpha,
                                                         const std::vector<R>& betas, unsigned jobs = 1) {
  std::vector<DiscreteBound> best(betas.size());
  parallel_for(betas.size(), jobs, [&](std::size_t i) {
    for (std::size_t x = 0; x < b.size(); ++x) {
      const auto d = max_discrete_in_ball(b, x, betas[i], alpha);
      best[i].lower = std::max(best[i].lower, d.lower);
      best[i].upper = std::max(best[i].upper, d.upper);
    }
  });
  std::vector<std::pair<R, DiscreteBound>> out;
  for (std::size_t i = 0; i < betas.size(); ++i) out.emplace_back(betas[i], best[i]);
  return out;
}

/// Greedy maximal subset Y with B(y, a) n B(y', a) empty for distinct
/// members, scanning elements in index order.
template <class P, class R>
ElementSet maximal_separated_set(const Ballean<P, R>& b, const R& a) {
  ElementSet chosen = b.empty_set();
  ElementSet covered = b.empty_set();
  for (std::size_t x = 0; x < b.size(); ++x) {
    const auto bx = ball(b, x, a);
    if (!bx.intersects(covered)) {
      chosen.set(x);
      covered |= bx;
    }
  }
  return chosen;
}

template <class R>
struct BGSearch {
  std::optional<BGWitness<R>> witness;
  WitnessReport report;
  bool separated_set_large = false;  // cross-check: the maximal a-separated Y is large
  bool separated_set_ulf = false;    // cross-check: B_Y's profile is stable across truncations
};

/// Scans swept radii a and returns the first whose discrete bounds agree
/// between two truncations of the same family, on their common radii.
/// Alongside, it runs the large-ULF-subset cross-check on the maximal
/// a-separated set of each truncation.
template <class P, class R>
BGSearch<R> bounded_geometry_search(const Ballean<P, R>& small, const Ballean<P, R>& large, unsigned jobs = 1) {
  BGSearch<R> out;
  out.report = WitnessReport{Verdict::inconclusive, {}, small.truncation(), {}};
  std::vector<R> common;
  for (const auto& r : small.radii()) {
    if (large.admits_radius(r) && std::find(large.radii().begin(), large.radii().end(), r) != large.radii().end()) {
      common.push_back(r);
    }
  }
  for (const auto& a : small.radii()) {
    if (std::find(common.begin(), common.end(), a) == common.end()) continue;
    auto f_small = discrete_bounds(small, a, common, jobs);
    auto f_large = discrete_bounds(large, a, common, jobs);
    if (f_small != f_large) continue;
    out.witness = BGWitness<R>{a, std::move(f_small)};

    const auto y_small = maximal_separated_set(small, a);
    const auto y_large = maximal_separated_set(large, a);
    out.separated_set_large = is_large(small, y_small).certified() && is_large(large, y_large).certified();
    const auto p_small = ulf_profile(subballean(small, y_small), std::nullopt, jobs);
    const auto p_large = ulf_profile(subballean(large, y_large), std::nullopt, jobs);
    out.separated_set_ulf = true;
    for (const auto& r : common) out.separated_set_ulf = out.separated_set_ulf && p_small.at(r) == p_large.at(r);

    out.report.verdict = Verdict::certified;
    out.report.add("witness", *out.witness);
    out.report.add("separated_set", element_set_json(small, y_small));
    out.report.add("separated_set_large", out.separated_set_large);
    out.report.add("separated_set_ulf", out.separated_set_ulf);
    out.report.add("compared_universe_sizes",
                   nlohmann::json::array({small.truncation().universe_size, large.truncation().universe_size}));
    return out;
  }
  out.report.note = "no swept radius gives stable discrete bounds";
  return out;
}

// --- Isolated balls and scatteredness ---------------------------------------

/// Elements outside `beyond` whose a-ball is a singleton.
template <class P, class R>
std::vector<std::size_t> find_isolated_balls(const Ballean<P, R>& b, const R& a, const ElementSet& beyond,
                                             unsigned jobs = 1) {
  std::vector<char> isolated(b.size(), 0);
  parallel_for(b.size(), jobs, [&](std::size_t x) {
    if (!beyond.test(x)) isolated[x] = ball(b, x, a).count() == 1;
  });
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (isolated[x]) out.push_back(x);
  }
  return out;
}

/// (B(y, b) \ B(y, a)) n Y is empty.
template <class P, class R>
bool scattered_witness_check(const Ballean<P, R>& b, const ElementSet& Y, const R& alpha, const R& beta,
                             std::size_t y) {
  if (y >= b.size() || !Y.test(y)) throw DomainError(b.name() + ": scattered_witness_check needs y in Y");
  ElementSet annulus = ball(b, y, beta) - ball(b, y, alpha);
  return !annulus.intersects(Y);
}

struct ScatterWitness {
  FinSet alpha;
  FinSet y;
};

namespace detail {

inline FinSet union_of(const std::vector<FinSet>& ys) {
  FinSet u;
  for (const auto& f : ys) u = u | f;
  return u;
}

// Follows the induction on n. Case 1: some F in Y starts beyond max b, so
// B#(F, b) = {F}. Case 2: the minima are finitely many; recurse on the tails
// of each minimum class and widen the returned radius by the minima.
inline ScatterWitness scatter_recursive(std::size_t n, const std::vector<FinSet>& ys, const FinSet& beta,
                                        const std::function<bool(const std::vector<FinSet>&, const ScatterWitness&)>& ok) {
  for (const auto& f : ys) {
    if (beta.empty() || f.min() > beta.max()) return {FinSet{}, f};
  }
  // Degenerate radius: covers every member of Y, so B#(y, a) n Y = Y.
  const ScatterWitness fallback{union_of(ys), ys.front()};
  if (n <= 1) return fallback;
  FinSet minima;
  for (const auto& f : ys) minima.insert(f.min());
  for (auto x : minima.members()) {
    std::vector<FinSet> tails;
    for (const auto& f : ys) {
      if (f.min() == x) tails.push_back(f.without(x));
    }
    const auto sub = scatter_recursive(n - 1, tails, beta.without(x), ok);
    const ScatterWitness cand{sub.alpha | minima, sub.y.with(x)};
    if (ok(ys, cand)) return cand;
  }
  return fallback;
}

}  // namespace detail

/// Witness (a, y) for the scatteredness condition of Y, a family of
/// n-element sets, against radius b in F#. `hyper` must be the hyperballean
/// of an F_X truncation containing every member of Y.
template <class R>
std::pair<std::optional<ScatterWitness>, WitnessReport> kn_scatter_strategy(const Ballean<FinSet, R>& hyper,
                                                                            std::size_t n,
                                                                            const std::vector<FinSet>& ys,
                                                                            const FinSet& beta) {
  if (ys.empty()) throw DomainError("kn_scatter_strategy: Y must be non-empty");
  for (const auto& f : ys) {
    if (f.size() != n) throw DomainError("kn_scatter_strategy: " + to_string(f) + " is not an n-set");
  }
  auto as_set = [&](const std::vector<FinSet>& fs) {
    ElementSet s = hyper.empty_set();
    for (const auto& f : fs) s.set(hyper.require_index(f));
    return s;
  };
  auto check = [&](const std::vector<FinSet>& fs, const ScatterWitness& w) {
    return scattered_witness_check(hyper, as_set(fs), w.alpha, beta, hyper.require_index(w.y));
  };
  const auto w = detail::scatter_recursive(n, ys, beta, check);
  WitnessReport rep{Verdict::inconclusive, {}, hyper.truncation(), {}};
  rep.add("beta", beta).add("alpha", w.alpha).add("y", w.y);
  if (check(ys, w)) {
    rep.verdict = Verdict::certified;
    return {w, rep};
  }
  rep.note = "no witness within the truncation";
  return {std::nullopt, rep};
}

}  // namespace ballean
