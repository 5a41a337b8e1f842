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

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ballean/ballean.hpp"
#include "ballean/core.hpp"
#include "ballean/families.hpp"
#include "ballean/hyperballean.hpp"

namespace ballean {

// --- Set/word correspondences -------------------------------------------

/// Indicator word of K: bit i is set iff i is in K.
inline BitVector chi(const FinSet& k, std::size_t length) { return BitVector(length, k); }

inline FinSet chi_inv(const BitVector& v) {
  if (v.is_zero()) throw DomainError("chi_inv: the zero word has no non-empty preimage");
  return v.support();
}

/// f(K) with support {min K - 1} u K, for non-empty K of even numbers >= 2.
inline BitVector embed_f(const FinSet& k, std::size_t length) {
  if (k.empty()) throw DomainError("embed_f: K must be non-empty");
  for (auto m : k.members()) {
    if (m == 0 || m % 2 != 0) throw DomainError("embed_f: member " + std::to_string(m) + " is not an even number >= 2");
  }
  if (k.max() >= length) {
    throw ResourceError("embed_f: word length " + std::to_string(length) + " cannot hold " + to_string(k), k.max() + 1);
  }
  return BitVector(length, k.with(k.min() - 1));
}

inline BitVector embed_f(const FinSet& k) {
  if (k.empty()) throw DomainError("embed_f: K must be non-empty");
  return embed_f(k, k.max() + 1);
}

/// Parity pattern of the image: at least two ones, the first at an odd
/// position and every later one at an even position. Strictly weaker than
/// image membership: {1, 6} matches but has no preimage.
inline bool has_image_parity(const BitVector& v) {
  const FinSet s = v.support();
  if (s.size() < 2 || s.min() % 2 == 0) return false;
  for (auto m : (s.without(s.min())).members()) {
    if (m % 2 != 0) return false;
  }
  return true;
}

/// Membership in the image of embed_f: the parity pattern, with the odd
/// first one immediately followed by a one.
inline bool in_S(const BitVector& v) {
  return has_image_parity(v) && v.support().contains(v.support().min() + 1);
}

/// Base index i of the even-number universe stands for the number 2(i+1).
inline FinSet evens_to_indices(const FinSet& evens) {
  FinSet out;
  for (auto m : evens.members()) {
    if (m == 0 || m % 2 != 0) throw DomainError("not an even number >= 2: " + std::to_string(m));
    out.insert(m / 2 - 1);
  }
  return out;
}

inline FinSet indices_to_evens(const FinSet& idx) {
  FinSet out;
  for (auto i : idx.members()) out.insert(2 * (i + 1));
  return out;
}

// --- The classes M_n = {F : min F = n} ------------------------------------

/// Every non-empty F over {0..N-1} with min F = n, in mask order.
inline std::vector<FinSet> m_class(std::size_t n, const Truncation& t) {
  t.validate();
  std::vector<FinSet> out;
  if (n >= t.universe_size) return out;
  if (t.universe_size > kMaxHyperBase + 1) throw ResourceError("m_class enumerates 2^(N-n-1) sets", t.universe_size);
  const std::size_t tail_bits = t.universe_size - n - 1;
  for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << tail_bits); ++tail) {
    out.push_back(FinSet::from_mask((std::uint64_t{1} << n) | (tail << (n + 1))));
  }
  return out;
}

template <class R>
ElementSet m_class_set(const Ballean<FinSet, R>& hyper, std::size_t n) {
  ElementSet s = hyper.empty_set();
  for (std::size_t i = 0; i < hyper.size(); ++i) {
    if (hyper.element(i).min() == n) s.set(i);
  }
  return s;
}

/// Drops the forced minimum n and shifts the tail to start at position 0.
inline BitVector mn_to_q(const FinSet& f, std::size_t n, std::size_t length) {
  if (f.empty() || f.min() != n) throw DomainError("mn_to_q: min " + to_string(f) + " != " + std::to_string(n));
  const FinSet tail = f.without(n);
  return BitVector(length, FinSet::from_mask(tail.mask() >> (n + 1)));
}

/// Inverse of mn_to_q.
inline FinSet q_to_mn(const BitVector& v, std::size_t n) {
  return FinSet::from_mask(v.support().mask() << (n + 1)).with(n);
}

// --- Maps between balleans ------------------------------------------------

template <class Source, class Target>
struct BalleanMap {
  using SP = typename Source::point_type;
  using TP = typename Target::point_type;
  Source source;
  Target target;
  std::function<TP(const SP&)> apply;
  std::function<std::optional<SP>(const TP&)> partial_inverse;  // may be empty
};

/// Explicit radius assignment a -> a' for a coarse-map check.
template <class SR, class TR>
using RadiusWitnessMap = std::vector<std::pair<SR, TR>>;

template <class SR, class TR, class F>
RadiusWitnessMap<SR, TR> make_radius_map(const std::vector<SR>& radii, F&& fn) {
  RadiusWitnessMap<SR, TR> out;
  out.reserve(radii.size());
  for (const auto& r : radii) out.emplace_back(r, fn(r));
  return out;
}

namespace detail {

/// image[x] for every source element; nullopt at the first point mapped
/// outside the target's truncation.
template <class Source, class Target>
std::vector<std::optional<std::size_t>> image_indices(const BalleanMap<Source, Target>& map) {
  std::vector<std::optional<std::size_t>> out(map.source.size());
  for (std::size_t x = 0; x < map.source.size(); ++x) out[x] = map.target.index_of(map.apply(map.source.element(x)));
  return out;
}

/// First (x, y) with y in B(x, a) but g(y) outside B'(g(x), a').
template <class SP, class SR, class TP, class TR>
std::optional<std::pair<std::size_t, std::size_t>> coarse_violation(const Ballean<SP, SR>& src,
                                                                    const Ballean<TP, TR>& tgt,
                                                                    const std::vector<std::size_t>& img,
                                                                    const SR& a, const TR& a2) {
  for (std::size_t x = 0; x < src.size(); ++x) {
    std::optional<std::pair<std::size_t, std::size_t>> bad;
    for_each_member(ball(src, x, a), [&](std::size_t y) {
      if (!bad && !contains(tgt, img[x], a2, img[y])) bad = std::make_pair(x, y);
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

}  // namespace detail

/// Smallest enumerated target radius a' with g(B(x, a)) c B'(g(x), a') for
/// every source x at the truncation.
template <class Source, class Target>
std::optional<typename Target::radius_type> find_coarse_witness(const BalleanMap<Source, Target>& map,
                                                                const typename Source::radius_type& a) {
  const auto opt = detail::image_indices(map);
  std::vector<std::size_t> img(opt.size());
  for (std::size_t x = 0; x < opt.size(); ++x) {
    if (!opt[x]) throw DomainError("find_coarse_witness: map leaves the target truncation");
    img[x] = *opt[x];
  }
  for (const auto& a2 : map.target.witness_radii()) {
    if (!detail::coarse_violation(map.source, map.target, img, a, a2)) return a2;
  }
  return std::nullopt;
}

/// Runs find_coarse_witness on every enumerated source radius.
template <class Source, class Target>
std::optional<RadiusWitnessMap<typename Source::radius_type, typename Target::radius_type>> discover_radius_map(
    const BalleanMap<Source, Target>& map) {
  RadiusWitnessMap<typename Source::radius_type, typename Target::radius_type> out;
  for (const auto& a : map.source.radii()) {
    auto w = find_coarse_witness(map, a);
    if (!w) return std::nullopt;
    out.emplace_back(a, *w);
  }
  return out;
}

/// Certifies that `map` is a bijection of the enumerated supports whose
/// forward and inverse directions are coarse under the given radius maps.
/// Each radius map must assign every enumerated radius of its domain.
template <class Source, class Target>
WitnessReport verify_asymorphism(
    const BalleanMap<Source, Target>& map,
    const RadiusWitnessMap<typename Source::radius_type, typename Target::radius_type>& fwd,
    const RadiusWitnessMap<typename Target::radius_type, typename Source::radius_type>& bwd) {
  const auto& src = map.source;
  const auto& tgt = map.target;
  WitnessReport rep{Verdict::refuted, {}, src.truncation(), {}};

  auto covers = [](const auto& radii, const auto& assoc) {
    for (const auto& r : radii) {
      bool found = false;
      for (const auto& [k, v] : assoc) found = found || k == r;
      if (!found) return false;
    }
    return true;
  };
  if (!covers(src.radii(), fwd)) throw DomainError("verify_asymorphism: forward radius map misses a source radius");
  if (!covers(tgt.radii(), bwd)) throw DomainError("verify_asymorphism: backward radius map misses a target radius");

  const auto opt = detail::image_indices(map);
  std::vector<std::size_t> img(src.size());
  std::vector<long> pre(tgt.size(), -1);
  for (std::size_t x = 0; x < src.size(); ++x) {
    if (!opt[x]) {
      rep.note = "image leaves the target truncation";
      rep.add("escapee", src.element(x));
      return rep;
    }
    img[x] = *opt[x];
    if (pre[img[x]] >= 0) {
      rep.note = "not injective";
      rep.add("collision", nlohmann::json::array({src.element(static_cast<std::size_t>(pre[img[x]])), src.element(x)}));
      return rep;
    }
    pre[img[x]] = static_cast<long>(x);
  }
  for (std::size_t y = 0; y < tgt.size(); ++y) {
    if (pre[y] < 0) {
      rep.note = "not surjective";
      rep.add("omission", tgt.element(y));
      return rep;
    }
  }
  if (map.partial_inverse) {
    for (std::size_t x = 0; x < src.size(); ++x) {
      auto back = map.partial_inverse(tgt.element(img[x]));
      if (!back || !(*back == src.element(x))) {
        rep.note = "partial_inverse does not invert the map";
        rep.add("point", src.element(x));
        return rep;
      }
    }
  }
  std::vector<std::size_t> inv(tgt.size());
  for (std::size_t y = 0; y < tgt.size(); ++y) inv[y] = static_cast<std::size_t>(pre[y]);

  for (const auto& [a, a2] : fwd) {
    if (auto bad = detail::coarse_violation(src, tgt, img, a, a2)) {
      rep.note = "forward containment fails";
      rep.add("radius", a).add("target_radius", a2);
      rep.add("center", src.element(bad->first)).add("escapee", src.element(bad->second));
      return rep;
    }
  }
  for (const auto& [b, b2] : bwd) {
    if (auto bad = detail::coarse_violation(tgt, src, inv, b, b2)) {
      rep.note = "inverse containment fails";
      rep.add("radius", b).add("target_radius", b2);
      rep.add("center", tgt.element(bad->first)).add("escapee", tgt.element(bad->second));
      return rep;
    }
  }
  rep.verdict = Verdict::certified;
  auto pairs = [](const auto& assoc) {
    auto arr = nlohmann::json::array();
    for (const auto& [k, v] : assoc) arr.push_back({k, v});
    return arr;
  };
  rep.add("points", src.size()).add("forward", pairs(fwd)).add("backward", pairs(bwd));
  return rep;
}

/// One-directional version: certifies g(B(x,a)) c B'(g(x), a') for every
/// listed pair. The map need not be injective.
template <class Source, class Target>
WitnessReport verify_coarse(const BalleanMap<Source, Target>& map,
                            const RadiusWitnessMap<typename Source::radius_type, typename Target::radius_type>& fwd) {
  WitnessReport rep{Verdict::refuted, {}, map.source.truncation(), {}};
  const auto opt = detail::image_indices(map);
  std::vector<std::size_t> img(opt.size());
  for (std::size_t x = 0; x < opt.size(); ++x) {
    if (!opt[x]) {
      rep.note = "image leaves the target truncation";
      rep.add("escapee", map.source.element(x));
      return rep;
    }
    img[x] = *opt[x];
  }
  for (const auto& [a, a2] : fwd) {
    if (auto bad = detail::coarse_violation(map.source, map.target, img, a, a2)) {
      rep.note = "containment fails";
      rep.add("radius", a).add("target_radius", a2);
      rep.add("center", map.source.element(bad->first)).add("escapee", map.source.element(bad->second));
      return rep;
    }
  }
  rep.verdict = Verdict::certified;
  rep.add("pairs", fwd.size());
  return rep;
}

// --- Two explicit asymorphisms ----------------------------------------------

/// chi from {H in F# : 0 in H} onto {v in Q : v_0 = 1}, both over N
/// positions, with radius maps F -> F \ {0} and G -> G u {0}.
inline WitnessReport chi_asymorphism(std::size_t universe, std::size_t budget) {
  const auto t = make_truncation(universe, budget);
  const auto hyper = hyperballean(f_ballean(t));
  const auto cube = q_ballean(t);
  ElementSet with_zero = hyper.empty_set();
  for (std::size_t i = 0; i < hyper.size(); ++i) with_zero[i] = hyper.element(i).contains(0);
  ElementSet first_bit = cube.empty_set();
  for (std::size_t i = 0; i < cube.size(); ++i) first_bit[i] = cube.element(i).bit(0);

  using S = Ballean<FinSet, FinSet>;
  using T = Ballean<BitVector, FinSet>;
  BalleanMap<S, T> map{subballean(hyper, with_zero), subballean(cube, first_bit),
                       [universe](const FinSet& h) { return chi(h, universe); },
                       [](const BitVector& v) -> std::optional<FinSet> { return chi_inv(v); }};
  const auto fwd = make_radius_map<FinSet, FinSet>(map.source.radii(), [](const FinSet& f) { return f.without(0); });
  const auto bwd = make_radius_map<FinSet, FinSet>(map.target.radii(), [](const FinSet& g) { return g.with(0); });
  return verify_asymorphism(map, fwd, bwd);
}

/// mn_to_q from M_n in F# over N onto Q of length N - n - 1, with radius
/// maps F -> shifted F and G -> unshifted G u {0..n}.
inline WitnessReport mn_asymorphism(std::size_t universe, std::size_t n, std::size_t budget) {
  if (n + 1 >= universe) throw DomainError("mn_asymorphism: M_n needs n + 1 < N");
  const std::size_t length = universe - n - 1;
  const auto hyper = hyperballean(f_ballean(make_truncation(universe, budget)));
  const auto cube = q_ballean(make_truncation(length, budget));

  using S = Ballean<FinSet, FinSet>;
  using T = Ballean<BitVector, FinSet>;
  BalleanMap<S, T> map{subballean(hyper, m_class_set(hyper, n)), cube,
                       [n, length](const FinSet& f) { return mn_to_q(f, n, length); },
                       [n](const BitVector& v) -> std::optional<FinSet> { return q_to_mn(v, n); }};
  const auto shift = [n](const FinSet& f) { return FinSet::from_mask(f.mask() >> (n + 1)); };
  const auto unshift = [n](const FinSet& g) { return FinSet::from_mask(g.mask() << (n + 1)) | FinSet::range(0, n); };
  const auto fwd = make_radius_map<FinSet, FinSet>(map.source.radii(), shift);
  const auto bwd = make_radius_map<FinSet, FinSet>(map.target.radii(), unshift);
  auto rep = verify_asymorphism(map, fwd, bwd);
  rep.add("n", n);
  return rep;
}

// --- The embedding of the hyperspace over even numbers into Q -------------

/// The two balleans the embedding identity compares, at word length L:
/// F# over the evens {2, 4, ...} below L, and Q of length L.
struct EmbeddingContext {
  std::size_t length;
  Ballean<FinSet, FinSet> hyper_evens;
  Ballean<BitVector, FinSet> cube;

  explicit EmbeddingContext(std::size_t word_length)
      : length(word_length),
        hyper_evens(hyperballean(f_ballean(make_truncation(evens_below(word_length), 0)))),
        cube(q_ballean(make_truncation(word_length, 0))) {}

  static std::size_t evens_below(std::size_t length) {
    if (length < 3) throw ResourceError("embedding needs word length >= 3", 3);
    return (length - 1) / 2;
  }
};

/// f(B#(K, {2..2n})) == S n B_Q(f(K), {1..2n}) as sets of words.
inline WitnessReport verify_embedding_identity(const FinSet& k, std::size_t n, const EmbeddingContext& ctx) {
  const std::size_t length = ctx.length;
  if (k.empty()) throw DomainError("verify_embedding_identity: K must be non-empty");
  if (k.max() >= length || 2 * n >= length) {
    throw ResourceError("word length " + std::to_string(length) + " cannot hold K and the window {1.." +
                            std::to_string(2 * n) + "}",
                        std::max(k.max(), 2 * n) + 1);
  }
  // {2, 4, ..., 2n} as base indices {0..n-1}, and {1..2n} as cube positions.
  const FinSet window_idx = n == 0 ? FinSet{} : FinSet::range(0, n - 1);
  const FinSet window_q = n == 0 ? FinSet{} : FinSet::range(1, 2 * n);

  std::set<BitVector> lhs;
  const auto& hyper = ctx.hyper_evens;
  const auto ki = hyper.require_index(evens_to_indices(k));
  for_each_member(ball(hyper, ki, window_idx),
                  [&](std::size_t z) { lhs.insert(embed_f(indices_to_evens(hyper.element(z)), length)); });

  std::set<BitVector> rhs;
  const auto& cube = ctx.cube;
  for_each_member(ball(cube, cube.require_index(embed_f(k, length)), window_q), [&](std::size_t v) {
    if (in_S(cube.element(v))) rhs.insert(cube.element(v));
  });

  WitnessReport rep{lhs == rhs ? Verdict::certified : Verdict::refuted, {}, make_truncation(length, 0), {}};
  rep.add("K", k).add("n", n);
  auto as_json = [](const std::set<BitVector>& s) {
    auto arr = nlohmann::json::array();
    for (const auto& v : s) arr.push_back(v);
    return arr;
  };
  if (rep.certified()) {
    rep.add("image", as_json(lhs));
  } else {
    rep.add("lhs", as_json(lhs)).add("rhs", as_json(rhs));
    rep.note = "embedded hyperball differs from the S-part of the cube ball";
  }
  return rep;
}

inline WitnessReport verify_embedding_identity(const FinSet& k, std::size_t n, const Truncation& t) {
  return verify_embedding_identity(k, n, EmbeddingContext(t.universe_size));
}

}  // namespace ballean
