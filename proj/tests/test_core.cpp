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
using testing_support::index_ball;
using testing_support::to_finset;
using testing_support::to_oracle;

namespace {

// Elements {0,1,2}: raw B(1) = {1,2}, raw B(2) = {2}, raw B(0) = {0}, one radius.
Ballean<std::size_t, std::size_t> toy() {
  Ballean<std::size_t, std::size_t>::Definition def;
  def.name = "toy";
  def.truncation = make_truncation(3, 0);
  def.elements = {0, 1, 2};
  def.radii = {0};
  def.witness_radii = {0};
  def.raw_ball = [](std::size_t x, std::size_t) {
    ElementSet s(3);
    s.set(x);
    if (x == 1) s.set(2);
    return s;
  };
  return Ballean<std::size_t, std::size_t>(std::move(def));
}

ElementSet of(std::size_t n, std::initializer_list<std::size_t> xs) {
  ElementSet s(n);
  for (auto x : xs) s.set(x);
  return s;
}

Ballean<std::size_t, Rational> line(std::size_t n, std::size_t budget, std::optional<std::size_t> horizon = {}) {
  return metric_ballean(line_metric(), make_truncation(n, budget, horizon));
}

}  // namespace

TEST(StarBall, ToyBalleanScansElements) {
  const auto b = toy();
  EXPECT_EQ(star_ball(b, 2, std::size_t{0}), of(3, {1, 2}));
  EXPECT_EQ(star_ball(b, 1, std::size_t{0}), of(3, {1}));
}

TEST(StarBall, FBalleanExamples) {
  const auto f = f_ballean(make_truncation(5, 2));
  EXPECT_EQ(star_ball(f, 1, FinSet{1, 3}), of(5, {1, 3}));
  for (std::size_t x = 0; x < 5; ++x) EXPECT_EQ(star_ball(f, x, FinSet{}), of(5, {x}));
}

TEST(StarBall, OutsideTruncationIsDomainError) {
  const auto f = f_ballean(make_truncation(5, 2));
  EXPECT_THROW(star_ball(f, 5, FinSet{}), DomainError);
  EXPECT_THROW(star_ball(f, 0, FinSet{7}), DomainError);
  EXPECT_THROW(ball(f, 9, FinSet{}), DomainError);
}

TEST(Ball, ToyIsSymmetrized) {
  const auto b = toy();
  EXPECT_EQ(ball(b, 1, std::size_t{0}), of(3, {1}));
  EXPECT_EQ(ball(b, 2, std::size_t{0}), of(3, {2}));
  EXPECT_FALSE(contains(b, 1, std::size_t{0}, 2));
}

TEST(Ball, FBalleanRawBallsAreAlreadySymmetric) {
  const auto f = f_ballean(make_truncation(6, 6));
  for (const auto& a : f.radii()) {
    for (std::size_t x = 0; x < f.size(); ++x) {
      ASSERT_EQ(ball(f, x, a), f.raw_ball(x, a));
      ASSERT_EQ(index_ball(f, x, a), oracle::f_ball(static_cast<int>(x), to_oracle(a)));
    }
  }
}

TEST(Ball, LineMatchesOracle) {
  const auto b = line(21, 5);
  for (const auto& r : b.radii()) {
    for (std::size_t x = 0; x < b.size(); ++x) {
      ASSERT_EQ(index_ball(b, x, r), oracle::line_ball(static_cast<int>(x), floor_of(r), 21));
    }
  }
}

// Symmetry and reflexivity of the symmetrized ball, for every family.
template <class P, class R>
void expect_symmetric_and_reflexive(const Ballean<P, R>& b) {
  for (const auto& a : b.radii()) {
    for (std::size_t x = 0; x < b.size(); ++x) {
      const auto bx = ball(b, x, a);
      ASSERT_TRUE(bx.test(x)) << b.name();
      for (std::size_t y = 0; y < b.size(); ++y) {
        ASSERT_EQ(bx.test(y), ball(b, y, a).test(x)) << b.name() << " " << x << " " << y;
        ASSERT_EQ(bx.test(y), contains(b, x, a, y));
      }
    }
  }
}

TEST(Ball, SymmetricAndReflexiveForEveryFamily) {
  expect_symmetric_and_reflexive(toy());
  expect_symmetric_and_reflexive(f_ballean(make_truncation(6, 2)));
  expect_symmetric_and_reflexive(q_ballean(make_truncation(5, 2)));
  expect_symmetric_and_reflexive(line(10, 3));
  expect_symmetric_and_reflexive(metric_ballean(pow2_metric(), make_truncation(8, 20)));
  expect_symmetric_and_reflexive(doubled_ballean(make_truncation(5, 2)));
  expect_symmetric_and_reflexive(hyperballean(f_ballean(make_truncation(5, 2))));
  expect_symmetric_and_reflexive(hyperballean(line(6, 2)));
}

TEST(SetBall, Examples) {
  const auto f = f_ballean(make_truncation(6, 2));
  EXPECT_EQ(set_ball(f, of(6, {0, 5}), FinSet{0, 1}), of(6, {0, 1, 5}));
  EXPECT_EQ(set_ball(f, of(6, {3}), FinSet{3, 4}), ball(f, 3, FinSet{3, 4}));
  const auto l = line(21, 2);
  EXPECT_EQ(set_ball(l, of(21, {0, 10}), Rational(1)), of(21, {0, 1, 9, 10, 11}));
  EXPECT_THROW(set_ball(f, f.empty_set(), FinSet{}), DomainError);
}

TEST(SetBall, MonotoneInSetAndRadius) {
  const auto f = f_ballean(make_truncation(5, 2));
  const auto sets = oracle::all_subsets(5);
  for (const auto& a : f.radii()) {
    for (const auto& a2 : f.radii()) {
      if (!radius_leq(f, a, a2)) continue;
      for (const auto& s : sets) {
        if (s.empty()) continue;
        for (const auto& s2 : sets) {
          if (!oracle::subset(s, s2)) continue;
          ElementSet A(5), A2(5);
          for (int x : s) A.set(static_cast<std::size_t>(x));
          for (int x : s2) A2.set(static_cast<std::size_t>(x));
          ASSERT_TRUE(set_ball(f, A, a).is_subset_of(set_ball(f, A2, a2)));
        }
      }
    }
  }
}

TEST(RadiusLeq, Examples) {
  const auto f = f_ballean(make_truncation(6, 3));
  for (const auto& a : f.radii()) {
    for (const auto& c : f.radii()) {
      if (a.subset_of(c)) EXPECT_TRUE(radius_leq(f, a, c)) << to_string(a) << " " << to_string(c);
    }
  }
  const auto l = line(10, 3);
  EXPECT_TRUE(radius_leq(l, Rational(1), Rational(2)));
  EXPECT_FALSE(radius_leq(l, Rational(2), Rational(1)));
}

TEST(RadiusLeq, ReflexiveAndTransitive) {
  const auto f = f_ballean(make_truncation(5, 2));
  const auto& rs = f.radii();
  for (const auto& a : rs) {
    EXPECT_TRUE(radius_leq(f, a, a));
    for (const auto& b : rs) {
      for (const auto& c : rs) {
        if (radius_leq(f, a, b) && radius_leq(f, b, c)) ASSERT_TRUE(radius_leq(f, a, c));
      }
    }
  }
}

TEST(IsBounded, Examples) {
  const auto f = f_ballean(make_truncation(6, 3));
  const auto rep = is_bounded(f, of(6, {1, 2, 3}));
  ASSERT_TRUE(rep.certified());
  EXPECT_EQ(*rep.find("center"), 1);
  EXPECT_EQ(rep.find("radius")->get<FinSet>(), (FinSet{1, 2, 3}));
  EXPECT_TRUE(replay_bounded(f, of(6, {1, 2, 3}), rep));

  const auto l = line(101, 10);
  const auto wide = is_bounded(l, l.full_set());
  EXPECT_EQ(wide.verdict, Verdict::inconclusive);
  EXPECT_TRUE(wide.witnesses.empty());

  const auto single = is_bounded(l, of(101, {40}));
  ASSERT_TRUE(single.certified());
  EXPECT_EQ(*single.find("radius"), 0);
  EXPECT_THROW(is_bounded(f, f.empty_set()), DomainError);
}

TEST(IsLarge, Examples) {
  const auto l = line(21, 2);
  ElementSet evens(21);
  for (std::size_t i = 0; i < 21; i += 2) evens.set(i);
  const auto rep = is_large(l, evens);
  ASSERT_TRUE(rep.certified());
  EXPECT_EQ(*rep.find("radius"), 1);
  EXPECT_TRUE(replay_large(l, evens, rep));

  const auto all = is_large(l, l.full_set());
  ASSERT_TRUE(all.certified());
  EXPECT_EQ(*all.find("radius"), 0);

  const auto f = f_ballean(make_truncation(6, 3));
  EXPECT_EQ(is_large(f, of(6, {0})).verdict, Verdict::inconclusive);
}

TEST(AreClose, Examples) {
  const auto l = line(21, 2);
  ElementSet evens(21), odds(21);
  for (std::size_t i = 0; i < 21; ++i) (i % 2 ? odds : evens).set(i);
  const auto rep = are_close(l, evens, odds);
  ASSERT_TRUE(rep.certified());
  EXPECT_EQ(*rep.find("radius"), 1);
  EXPECT_TRUE(replay_close(l, evens, odds, rep));

  const auto same = are_close(l, evens, evens);
  ASSERT_TRUE(same.certified());
  EXPECT_EQ(*same.find("radius"), 0);
}

TEST(AreClose, ReflexiveSymmetricAndReplayable) {
  const auto f = f_ballean(make_truncation(5, 3));
  const auto sets = oracle::all_subsets(5);
  for (const auto& s : sets) {
    for (const auto& t : sets) {
      if (s.empty() || t.empty()) continue;
      ElementSet Y(5), Z(5);
      for (int x : s) Y.set(static_cast<std::size_t>(x));
      for (int x : t) Z.set(static_cast<std::size_t>(x));
      const auto yz = are_close(f, Y, Z);
      const auto zy = are_close(f, Z, Y);
      ASSERT_EQ(yz.verdict, zy.verdict);
      if (yz.certified()) {
        ASSERT_TRUE(replay_close(f, Y, Z, yz));
        ASSERT_EQ(*yz.find("radius"), *zy.find("radius"));
      }
      if (s == t) ASSERT_TRUE(yz.certified());
    }
  }
}

TEST(Replay, RejectsForgedWitnesses) {
  const auto f = f_ballean(make_truncation(6, 3));
  auto rep = is_bounded(f, of(6, {1, 2}));
  ASSERT_TRUE(rep.certified());
  WitnessReport forged = rep;
  forged.witnesses.clear();
  forged.add("center", 1).add("radius", FinSet{1});
  EXPECT_FALSE(replay_bounded(f, of(6, {1, 2}), forged));
  WitnessReport uncertified = rep;
  uncertified.verdict = Verdict::inconclusive;
  EXPECT_FALSE(replay_bounded(f, of(6, {1, 2}), uncertified));
}

TEST(Subballean, Examples) {
  const auto f = f_ballean(make_truncation(6, 2));
  const auto y = subballean(f, of(6, {0, 2, 4}));
  ASSERT_EQ(y.size(), 3U);
  EXPECT_EQ(y.elements(), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(y.points_of(ball(y, 0, FinSet{0, 1})), (std::vector<std::size_t>{0}));
  EXPECT_EQ(y.points_of(ball(y, 1, FinSet{0, 2})), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(same_balls(subballean(f, f.full_set()), f));
  EXPECT_THROW(subballean(f, f.empty_set()), DomainError);
}

TEST(Subballean, SingletonsInsideHyperballeanClipToSingletons) {
  const auto h = hyperballean(f_ballean(make_truncation(6, 3)));
  ElementSet singles = h.empty_set();
  for (std::size_t i = 0; i < h.size(); ++i) singles[i] = h.element(i).size() == 1;
  const auto y = subballean(h, singles);
  for (const auto& a : y.radii()) {
    for (std::size_t x = 0; x < y.size(); ++x) {
      for (const auto& z : y.points_of(ball(y, x, a))) ASSERT_EQ(z.size(), 1U);
    }
  }
}

TEST(Subballean, NestingCollapses) {
  const auto f = f_ballean(make_truncation(6, 2));
  const auto sets = oracle::all_subsets(6);
  for (const auto& ys : sets) {
    if (ys.size() < 2) continue;
    const auto Y = f.set_of([&] {
      std::vector<std::size_t> v;
      for (int x : ys) v.push_back(static_cast<std::size_t>(x));
      return v;
    }());
    const auto by = subballean(f, Y);
    for (const auto& zs : oracle::subsets_of(ys)) {
      if (zs.empty()) continue;
      std::vector<std::size_t> zv;
      for (int x : zs) zv.push_back(static_cast<std::size_t>(x));
      ASSERT_TRUE(same_balls(subballean(by, by.set_of(zv)), subballean(f, f.set_of(zv))));
    }
  }
}

TEST(Ballean, ConstructionIsValidated) {
  Ballean<std::size_t, std::size_t>::Definition def;
  def.name = "bad";
  def.truncation = make_truncation(2, 0);
  def.raw_ball = [](std::size_t x, std::size_t) {
    ElementSet s(2);
    s.set(x);
    return s;
  };
  EXPECT_THROW((Ballean<std::size_t, std::size_t>(def)), ConstructionError);
  def.elements = {0, 0};
  EXPECT_THROW((Ballean<std::size_t, std::size_t>(def)), ConstructionError);
  def.elements = {0, 1};
  def.radii = {0, 0};
  EXPECT_THROW((Ballean<std::size_t, std::size_t>(def)), ConstructionError);
  def.radii = {0};
  def.raw_ball = nullptr;
  EXPECT_THROW((Ballean<std::size_t, std::size_t>(def)), ConstructionError);
}

TEST(Ballean, IndexLookupAndJson) {
  const auto d = doubled_ballean(make_truncation(3, 1));
  EXPECT_EQ(d.require_index(DoubledPoint{2, 1}), 5U);
  EXPECT_FALSE(d.index_of(DoubledPoint{3, 0}).has_value());
  EXPECT_THROW(d.require_index(DoubledPoint{3, 0}), DomainError);
  EXPECT_EQ(element_set_json(d, of(6, {5, 0})).dump(), "[[0,0],[2,1]]");
  EXPECT_EQ(element_from_json(d, nlohmann::json::array({1, 0})), std::optional<std::size_t>(2));
}
