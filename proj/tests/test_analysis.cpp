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

#include <gtest/gtest.h>

#include "ballean/all.hpp"
#include "convert.hpp"
#include "oracle.hpp"

using namespace ballean;
using testing_support::select;
using testing_support::to_oracle;

namespace {

template <class P, class R>
ElementSet indices(const Ballean<P, R>& b, std::initializer_list<std::size_t> xs) {
  ElementSet s = b.empty_set();
  for (auto x : xs) s.set(b.require_index(x));
  return s;
}

template <class P, class R>
void expect_certified_with_replayable_composition(const Ballean<P, R>& b) {
  const auto rep = check_axioms(b, 2);
  ASSERT_TRUE(rep.certified()) << b.name() << ": " << rep.note;
  ASSERT_NE(rep.find("composition"), nullptr);
  EXPECT_EQ(rep.find("composition")->size(), b.radii().size() * b.radii().size());
  for (const auto& triple : *rep.find("composition")) {
    const auto a = triple[0].template get<R>(), c = triple[1].template get<R>(), g = triple[2].template get<R>();
    for (std::size_t x = 0; x < b.size(); ++x) {
      ASSERT_TRUE(set_ball(b, ball(b, x, a), c).is_subset_of(ball(b, x, g)));
    }
  }
}

}  // namespace

// --- check_axioms -------------------------------------------------------------

TEST(CheckAxioms, BuiltInFamilies) {
  expect_certified_with_replayable_composition(f_ballean(make_truncation(8, 2, 8)));
  expect_certified_with_replayable_composition(q_ballean(make_truncation(6, 2, 6)));
  expect_certified_with_replayable_composition(metric_ballean(line_metric(), make_truncation(10, 4, 9)));
  expect_certified_with_replayable_composition(metric_ballean(pow2_metric(), make_truncation(8, 4, 255)));
  expect_certified_with_replayable_composition(doubled_ballean(make_truncation(5, 2, 5)));
}

TEST(CheckAxioms, Hyperballeans) {
  expect_certified_with_replayable_composition(hyperballean(f_ballean(make_truncation(6, 2, 6))));
  expect_certified_with_replayable_composition(hyperballean(metric_ballean(line_metric(), make_truncation(7, 2, 6))));
  expect_certified_with_replayable_composition(hyperballean(doubled_ballean(make_truncation(3, 1, 3))));
}

TEST(CheckAxioms, UnionOfRadiiAbsorbsComposition) {
  for (const std::size_t n : {6U, 8U}) {
    const auto f = f_ballean(make_truncation(n, 3, 6));
    const auto q = q_ballean(make_truncation(6, 2, 4));
    for (const auto& a : f.radii()) {
      for (const auto& c : f.radii()) {
        for (std::size_t x = 0; x < f.size(); ++x) {
          ASSERT_TRUE(set_ball(f, ball(f, x, a), c).is_subset_of(ball(f, x, a | c)));
        }
      }
    }
    for (const auto& a : q.radii()) {
      for (const auto& c : q.radii()) {
        for (std::size_t x = 0; x < q.size(); ++x) {
          ASSERT_TRUE(set_ball(q, ball(q, x, a), c).is_subset_of(ball(q, x, a | c)));
        }
      }
    }
  }
}

TEST(CheckAxioms, ShortHorizonRefutesComposition) {
  const auto line = metric_ballean(line_metric(), make_truncation(5, 1, 1));
  const auto rep = check_axioms(line);
  EXPECT_EQ(rep.verdict, Verdict::refuted);
  EXPECT_EQ(rep.note, "no witness radius absorbs the composition");
  EXPECT_EQ(*rep.find("alpha"), nlohmann::json(Rational(1)));
  EXPECT_EQ(*rep.find("beta"), nlohmann::json(Rational(1)));
}

TEST(CheckAxioms, ShortHorizonRefutesConnectivity) {
  const auto rep = check_axioms(q_ballean(make_truncation(6, 2, 4)));
  EXPECT_EQ(rep.verdict, Verdict::refuted);
  EXPECT_EQ(rep.note, "no witness radius joins the pair");
  EXPECT_NE(rep.find("point"), nullptr);
  EXPECT_NE(rep.find("other"), nullptr);
}

TEST(CheckAxioms, NonReflexiveBallRefutes) {
  Ballean<std::size_t, std::size_t>::Definition def;
  def.name = "shifted";
  def.truncation = make_truncation(3, 0);
  def.elements = {0, 1, 2};
  def.radii = {0};
  def.witness_radii = {0};
  def.raw_ball = [](std::size_t x, const std::size_t&) {
    ElementSet s(3);
    s.set((x + 1) % 3);
    return s;
  };
  const auto rep = check_axioms(Ballean<std::size_t, std::size_t>(def));
  EXPECT_EQ(rep.note, "x is missing from its own ball");
}

// --- ULF profiles ----------------------------------------------------------------

TEST(UlfProfile, HyperOfFIsTwoToTheRadiusMinusOne) {
  const auto h = hyperballean(f_ballean(make_truncation(6, 3)));
  const auto p = ulf_profile(h, std::nullopt, 3);
  ASSERT_EQ(p.max_ball.size(), h.radii().size());
  for (const auto& [f, v] : p.max_ball) {
    EXPECT_EQ(v, f.empty() ? 1U : (std::size_t{1} << f.size()) - 1) << to_string(f);
  }
  EXPECT_EQ(p.at(FinSet{0, 1}), 3U);
  EXPECT_FALSE(p.at(FinSet{0, 1, 2, 3}).has_value());
}

TEST(UlfProfile, CubeIsTwoToTheRadius) {
  const auto q = q_ballean(make_truncation(8, 2));
  for (const auto& [f, v] : ulf_profile(q).max_ball) EXPECT_EQ(v, std::size_t{1} << f.size());
}

TEST(UlfProfile, LineHyperballGrowsAtDesignatedCenters) {
  const auto h = hyperballean(metric_ballean(line_metric(), make_truncation(10, 1, 9)));
  const FinSet x0{4}, x1{4, 8};
  EXPECT_EQ(ball(h, h.require_index(x0), Rational(1)).count(), 7U);
  EXPECT_EQ(ball(h, h.require_index(x1), Rational(1)).count(), 49U);
  ElementSet centers = h.empty_set();
  centers.set(h.require_index(x0));
  const auto p0 = ulf_profile(h, centers);
  centers.set(h.require_index(x1));
  const auto p1 = ulf_profile(h, centers);
  EXPECT_EQ(p0.at(Rational(1)), 7U);
  EXPECT_EQ(p1.at(Rational(1)), 49U);
  EXPECT_EQ(ulf_divergence(p0, p1), (std::vector<Rational>{Rational(1)}));
  EXPECT_TRUE(ulf_divergence(p1, p1).empty());
}

TEST(UlfProfile, JsonShape) {
  const auto q = q_ballean(make_truncation(2, 1));
  const nlohmann::json j = ulf_profile(q);
  EXPECT_EQ(j, nlohmann::json::parse(R"([{"max_ball":1,"radius":[]},{"max_ball":2,"radius":[0]},
                                         {"max_ball":2,"radius":[1]}])"));
}

// --- Growth sets ---------------------------------------------------------------------

TEST(GrowthSets, ShapeAndCertificate) {
  const auto g = growth_sets({4, 8}, {5, 9});
  EXPECT_EQ(g.x, (std::vector<FinSet>{{4}, {4, 8}}));
  EXPECT_EQ(g.xi[1], (std::vector<FinSet>{{4, 5, 8}, {4, 8, 9}}));
  const auto h = hyperballean(metric_ballean(line_metric(), make_truncation(10, 1, 9)));
  const auto rep = growth_witness(h, g, Rational(1));
  ASSERT_TRUE(rep.certified()) << rep.note;
  EXPECT_EQ(*rep.find("ball_sizes"), nlohmann::json::parse("[7,49]"));
  EXPECT_THROW(growth_sets({1}, {}), DomainError);
}

TEST(GrowthSets, CollisionsAndEscapesRefute) {
  const auto h = hyperballean(metric_ballean(line_metric(), make_truncation(10, 1, 9)));
  EXPECT_EQ(growth_witness(h, growth_sets({4, 8}, {4, 8}), Rational(1)).note, "growth sets collide");
  EXPECT_EQ(growth_witness(h, growth_sets({4}, {7}), Rational(1)).note, "growth set outside the hyperball");
}

// --- Discreteness ------------------------------------------------------------------

TEST(AlphaDiscrete, LineExamples) {
  const auto line = metric_ballean(line_metric(), make_truncation(10, 3));
  EXPECT_TRUE(is_alpha_discrete(line, indices(line, {0, 2, 4}), Rational(1)));
  EXPECT_FALSE(is_alpha_discrete(line, indices(line, {0, 1}), Rational(1)));
  for (const auto& r : line.radii()) EXPECT_TRUE(is_alpha_discrete(line, indices(line, {5}), r));
  EXPECT_THROW(is_alpha_discrete(line, line.empty_set(), Rational(0)), DomainError);
}

TEST(MaxDiscrete, LineBallAroundTen) {
  const auto line = metric_ballean(line_metric(), make_truncation(20, 4));
  const auto d = max_discrete_in_ball(line, 10, Rational(4), Rational(1));
  EXPECT_TRUE(d.exact());
  EXPECT_EQ(d.lower, 5U);
}

TEST(MaxDiscrete, MatchesExhaustiveOracle) {
  const int n = 12;
  const auto line = metric_ballean(line_metric(), make_truncation(n, 4));
  for (std::size_t x = 0; x < static_cast<std::size_t>(n); ++x) {
    for (const auto& beta : line.radii()) {
      for (const auto& alpha : line.radii()) {
        const auto d = max_discrete_in_ball(line, x, beta, alpha);
        const auto expected = oracle::max_independent(
            oracle::line_ball(static_cast<int>(x), floor_of(beta), n),
            [&](int p, int q) { return std::labs(p - q) <= floor_of(alpha); });
        ASSERT_TRUE(d.exact());
        ASSERT_EQ(d.lower, expected) << x << " " << beta << " " << alpha;
      }
    }
  }
}

TEST(MaxDiscrete, FBallWithEmptyRadiusIsTheRadiusSize) {
  const auto f = f_ballean(make_truncation(6, 4));
  for (const auto& a : f.radii()) {
    if (a.empty()) continue;
    EXPECT_EQ(max_discrete_in_ball(f, a.min(), a, FinSet{}), (DiscreteBound{a.size(), a.size()}));
    EXPECT_EQ(max_discrete_in_ball(f, a.min(), a, a).lower, 1U);
  }
}

TEST(MaxDiscrete, LargeBallsGiveAValidInterval) {
  const auto line = metric_ballean(line_metric(), make_truncation(30, 12));
  const auto d = max_discrete_in_ball(line, 15, Rational(12), Rational(1));
  EXPECT_LE(d.lower, 13U);
  EXPECT_GE(d.upper, 13U);
  const nlohmann::json exact = DiscreteBound{3, 3};
  const nlohmann::json range = DiscreteBound{2, 4};
  EXPECT_EQ(exact, 3);
  EXPECT_EQ(range, nlohmann::json::parse(R"({"lower":2,"upper":4})"));
}

TEST(BoundedGeometry, FHasEmptyRadiusWitness) {
  const auto small = f_ballean(make_truncation(8, 2));
  const auto large = f_ballean(make_truncation(12, 2));
  const auto s = bounded_geometry_search(small, large, 2);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(s.witness->alpha, FinSet{});
  for (const auto& [f, bound] : s.witness->f_bound) {
    EXPECT_EQ(bound, (DiscreteBound{std::max<std::size_t>(1, f.size()), std::max<std::size_t>(1, f.size())}));
  }
  EXPECT_TRUE(s.report.certified());
  EXPECT_TRUE(s.separated_set_large);
  EXPECT_TRUE(s.separated_set_ulf);
}

TEST(BoundedGeometry, HyperOfFUsesItsProfile) {
  const auto small = hyperballean(f_ballean(make_truncation(6, 2)));
  const auto large = hyperballean(f_ballean(make_truncation(8, 2)));
  const auto s = bounded_geometry_search(small, large);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(s.witness->alpha, FinSet{});
  for (const auto& [f, bound] : s.witness->f_bound) {
    const std::size_t expected = f.empty() ? 1 : (std::size_t{1} << f.size()) - 1;
    EXPECT_EQ(bound.lower, expected);
    EXPECT_TRUE(bound.exact());
  }
}

TEST(BoundedGeometry, DoubledLineCrossCheckPasses) {
  const auto small = doubled_ballean(make_truncation(6, 2));
  const auto large = doubled_ballean(make_truncation(12, 2));
  const auto s = bounded_geometry_search(small, large, 4);
  ASSERT_TRUE(s.witness);
  EXPECT_TRUE(s.separated_set_large);
  EXPECT_TRUE(s.separated_set_ulf);
  EXPECT_EQ(*s.report.find("compared_universe_sizes"), nlohmann::json::parse("[6,12]"));
  const auto y = maximal_separated_set(small, s.witness->alpha);
  EXPECT_EQ(y, (select<DoubledPoint, FinSet>(small, [](const DoubledPoint& p) { return p.layer == 0; })));
}

TEST(BoundedGeometry, SeparatedSetHasDisjointBalls) {
  const auto line = metric_ballean(line_metric(), make_truncation(12, 3));
  for (const auto& a : line.radii()) {
    const auto y = members_of(maximal_separated_set(line, a));
    for (auto p : y) {
      for (auto q : y) {
        if (p != q) ASSERT_FALSE(ball(line, p, a).intersects(ball(line, q, a)));
      }
    }
  }
}

// --- Isolated balls --------------------------------------------------------------------

TEST(IsolatedBalls, HyperOfFAvoidingTheRadius) {
  const auto h = hyperballean(f_ballean(make_truncation(10, 3)));
  const FinSet radius{0, 1, 2};
  const auto got = find_isolated_balls(h, radius, h.empty_set(), 3);
  EXPECT_EQ(got.size(), 127U);
  for (auto i : got) EXPECT_GE(h.element(i).min(), 3U);
  EXPECT_NE(std::find(got.begin(), got.end(), h.require_index(FinSet{3})), got.end());

  ElementSet beyond = h.empty_set();
  beyond.set(h.require_index(FinSet{3}));
  EXPECT_EQ(find_isolated_balls(h, radius, beyond).size(), 126U);
}

TEST(IsolatedBalls, CubeHasNone) {
  const auto q = q_ballean(make_truncation(8, 2));
  for (const auto& f : q.radii()) {
    if (f.empty()) {
      EXPECT_EQ(find_isolated_balls(q, f, q.empty_set()).size(), q.size());
    } else {
      EXPECT_TRUE(find_isolated_balls(q, f, q.empty_set()).empty());
    }
  }
}

// --- Scatteredness -------------------------------------------------------------------

TEST(ScatteredWitness, SingletonsAtTwelve) {
  const auto h = hyperballean(f_ballean(make_truncation(12, 3)));
  const auto singletons = select<FinSet, FinSet>(h, [](const FinSet& f) { return f.size() == 1; });
  const FinSet beta{0, 1, 2};
  EXPECT_TRUE(scattered_witness_check(h, singletons, FinSet{}, beta, h.require_index(FinSet{3})));
  EXPECT_FALSE(scattered_witness_check(h, singletons, FinSet{}, beta, h.require_index(FinSet{1})));
  EXPECT_TRUE(scattered_witness_check(h, singletons, beta, beta, h.require_index(FinSet{1})));
  EXPECT_THROW(scattered_witness_check(h, singletons, FinSet{}, beta, h.require_index(FinSet{1, 2})), DomainError);
}

TEST(KnScatter, Examples) {
  const auto h = hyperballean(f_ballean(make_truncation(12, 3)));
  std::vector<FinSet> singles, pairs, through_zero;
  for (const auto& f : h.elements()) {
    if (f.size() == 1) singles.push_back(f);
    if (f.size() == 2) pairs.push_back(f);
    if (f.size() == 2 && f.contains(0)) through_zero.push_back(f);
  }
  std::sort(singles.begin(), singles.end());
  std::sort(pairs.begin(), pairs.end());

  auto [w1, r1] = kn_scatter_strategy(h, 1, singles, FinSet{0, 1, 2});
  ASSERT_TRUE(w1);
  EXPECT_EQ(w1->alpha, FinSet{});
  EXPECT_EQ(w1->y, FinSet{3});
  EXPECT_TRUE(r1.certified());

  auto [w2, r2] = kn_scatter_strategy(h, 2, pairs, FinSet{0, 1});
  ASSERT_TRUE(w2);
  EXPECT_EQ(w2->alpha, FinSet{});
  EXPECT_GE(w2->y.min(), 2U);

  const FinSet beta{0, 5};
  auto [w3, r3] = kn_scatter_strategy(h, 2, through_zero, beta);
  ASSERT_TRUE(w3) << r3.note;
  ElementSet y = h.empty_set();
  for (const auto& f : through_zero) y.set(h.require_index(f));
  EXPECT_TRUE(scattered_witness_check(h, y, w3->alpha, beta, h.require_index(w3->y)));
  EXPECT_TRUE(w3->y.contains(0));
}

TEST(KnScatter, RejectsMalformedFamilies) {
  const auto h = hyperballean(f_ballean(make_truncation(6, 2)));
  EXPECT_THROW(kn_scatter_strategy(h, 1, {}, FinSet{0}), DomainError);
  EXPECT_THROW(kn_scatter_strategy(h, 2, {FinSet{0}}, FinSet{0}), DomainError);
}

TEST(KnScatter, EveryWitnessReplays) {
  const auto h = hyperballean(f_ballean(make_truncation(8, 3)));
  std::vector<FinSet> pairs;
  for (const auto& f : h.elements()) {
    if (f.size() == 2) pairs.push_back(f);
  }
  for (const auto& beta : h.radii()) {
    for (std::size_t drop = 0; drop < 8; ++drop) {
      // Families of pairs that avoid one point, so the first case is not always available.
      std::vector<FinSet> ys;
      for (const auto& f : pairs) {
        if (!f.contains(drop) && f.min() <= 3) ys.push_back(f);
      }
      auto [w, rep] = kn_scatter_strategy(h, 2, ys, beta);
      if (!w) continue;
      ElementSet y = h.empty_set();
      for (const auto& f : ys) y.set(h.require_index(f));
      ASSERT_TRUE(scattered_witness_check(h, y, w->alpha, beta, h.require_index(w->y)));
    }
  }
}

// --- Thread count does not change results ----------------------------------------------

TEST(Jobs, ResultsDoNotDependOnThreadCount) {
  const auto h = hyperballean(f_ballean(make_truncation(7, 2, 7)));
  const nlohmann::json a1 = check_axioms(h, 1), a4 = check_axioms(h, 4);
  EXPECT_EQ(a1, a4);
  const nlohmann::json p1 = ulf_profile(h, std::nullopt, 1), p4 = ulf_profile(h, std::nullopt, 4);
  EXPECT_EQ(p1, p4);
  EXPECT_EQ(discrete_bounds(h, FinSet{}, h.radii(), 1), discrete_bounds(h, FinSet{}, h.radii(), 4));
  EXPECT_EQ(find_isolated_balls(h, FinSet{0}, h.empty_set(), 1), find_isolated_balls(h, FinSet{0}, h.empty_set(), 4));
}
