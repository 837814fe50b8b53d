#include "probmetrics/sets.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace pm = probmetrics;
using pm::Interval;
using pm::IntervalUnion;
using pm::Rat;

namespace {

IntervalUnion two_atom_neighborhood(const Rat& eps) {
  return pm::eps_neighborhood(std::vector<Rat>{Rat(0), Rat(1) / 4}, eps);
}

pm::SpaceHandle path_space() {
  // Three points in a row: 0 -1- 1 -1- 2, with d(0,2)=2.
  std::vector<std::vector<Rat>> d = {{Rat(0), Rat(1), Rat(2)},
                                     {Rat(1), Rat(0), Rat(1)},
                                     {Rat(2), Rat(1), Rat(0)}};
  return std::make_shared<pm::FiniteMetricSpace>(std::move(d));
}

}  // namespace

TEST(IntervalUnion, MergesOverlappingBalls) {
  IntervalUnion u = two_atom_neighborhood(Rat(1) / 4);
  ASSERT_EQ(u.parts().size(), 1u);
  EXPECT_EQ(u.parts()[0], Interval::open(Rat(-1) / 4, Rat(1) / 2));
}

TEST(IntervalUnion, TangentOpenBallsStaySplit) {
  IntervalUnion u = two_atom_neighborhood(Rat(1) / 8);
  ASSERT_EQ(u.parts().size(), 2u);
  EXPECT_EQ(u.parts()[0], Interval::open(Rat(-1) / 8, Rat(1) / 8));
  EXPECT_EQ(u.parts()[1], Interval::open(Rat(1) / 8, Rat(3) / 8));
  EXPECT_FALSE(u.contains(Rat(1) / 8));  // the shared endpoint is uncovered
  EXPECT_TRUE(u.contains(Rat(1) / 8 - Rat(1) / 1000));
}

TEST(IntervalUnion, WideBallsMergeAcrossAtoms) {
  IntervalUnion u = two_atom_neighborhood(Rat(3) / 8);
  ASSERT_EQ(u.parts().size(), 1u);
  EXPECT_EQ(u.parts()[0], Interval::open(Rat(-3) / 8, Rat(5) / 8));
}

TEST(IntervalUnion, TouchingHalfOpenIntervalsMerge) {
  IntervalUnion u(std::vector<Interval>{Interval::closed(Rat(0), Rat(1)),
                                        Interval::open(Rat(1), Rat(2))});
  ASSERT_EQ(u.parts().size(), 1u);
  EXPECT_TRUE(u.contains(Rat(1)));
  EXPECT_FALSE(u.contains(Rat(2)));
}

TEST(IntervalUnion, DropsEmptyAndAbsorbsNested) {
  IntervalUnion u(std::vector<Interval>{Interval::open(Rat(3), Rat(3)),
                                        Interval::closed(Rat(0), Rat(4)),
                                        Interval::closed(Rat(1), Rat(2))});
  ASSERT_EQ(u.parts().size(), 1u);
  EXPECT_EQ(u.parts()[0], Interval::closed(Rat(0), Rat(4)));
}

TEST(IntervalUnion, DegenerateClosedPointSurvives) {
  IntervalUnion u(std::vector<Interval>{Interval::closed(Rat(2), Rat(2))});
  ASSERT_EQ(u.parts().size(), 1u);
  EXPECT_TRUE(u.contains(Rat(2)));
  EXPECT_FALSE(u.contains(Rat(2) + Rat(1) / 100));
}

TEST(IntervalUnion, ComplementFlipsEndpoints) {
  IntervalUnion u(std::vector<Interval>{Interval::open(Rat(0), Rat(1)),
                                        Interval::closed(Rat(2), Rat(3))});
  IntervalUnion c = u.complement();
  ASSERT_EQ(c.parts().size(), 3u);
  EXPECT_TRUE(c.contains(Rat(0)));
  EXPECT_FALSE(c.contains(Rat(1) / 2));
  EXPECT_TRUE(c.contains(Rat(1)));
  EXPECT_FALSE(c.contains(Rat(2)));
  EXPECT_FALSE(c.contains(Rat(3)));
  EXPECT_TRUE(c.contains(Rat(4)));
  EXPECT_EQ(c.complement(), u);
}

TEST(IntervalUnion, ComplementOfEmptyAndFull) {
  EXPECT_EQ(IntervalUnion::empty_set().complement(), IntervalUnion::whole_line());
  EXPECT_EQ(IntervalUnion::whole_line().complement(), IntervalUnion::empty_set());
}

TEST(IntervalUnion, NeighborhoodIgnoresClosureDistinctions) {
  // d(x, A) = d(x, closure(A)), so the eps-neighborhood must match.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Interval> parts;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      Rat a(static_cast<int>(rng() % 17) - 8, 1 + static_cast<int>(rng() % 4));
      Rat b = a + Rat(1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 4));
      parts.push_back({pm::Endpoint::at(a, rng() % 2 == 0), pm::Endpoint::at(b, rng() % 2 == 0)});
    }
    IntervalUnion u(parts);
    Rat eps(1 + static_cast<int>(rng() % 8), 8);
    EXPECT_EQ(pm::eps_neighborhood(u, eps), pm::eps_neighborhood(u.closure(), eps));
  }
}

TEST(IntervalUnion, ShrinkingNeighborhoodsDescendToClosedSet) {
  // A = [0,1] union {2}; mass of A^(1/r) under a discrete reference set
  // of test points is nonincreasing in r and reaches the indicator of A.
  IntervalUnion a(std::vector<Interval>{Interval::closed(Rat(0), Rat(1)),
                                        Interval::closed(Rat(2), Rat(2))});
  std::vector<Rat> probes = {Rat(-1) / 2, Rat(-1) / 100, Rat(0), Rat(1) / 2,
                             Rat(1),      Rat(3) / 2,    Rat(2), Rat(5) / 2};
  int prev_count = static_cast<int>(probes.size()) + 1;
  for (int r = 1; r <= 128; r *= 2) {
    IntervalUnion n = pm::eps_neighborhood(a, Rat(1) / r);
    int count = 0;
    for (const auto& p : probes)
      if (n.contains(p)) ++count;
    EXPECT_LE(count, prev_count);
    prev_count = count;
  }
  int in_a = 0;
  for (const auto& p : probes)
    if (a.contains(p)) ++in_a;
  EXPECT_EQ(prev_count, in_a);  // for r large, only points of A remain
}

TEST(IntervalUnion, FiniteEndpointsSortedUnique) {
  IntervalUnion u(std::vector<Interval>{Interval::open(Rat(0), Rat(1)),
                                        Interval::closed(Rat(1), Rat(2))});
  auto e = u.finite_endpoints();
  ASSERT_EQ(e.size(), 2u);  // merged to (0,2]
  EXPECT_EQ(e[0], Rat(0));
  EXPECT_EQ(e[1], Rat(2));
}

TEST(EpsNeighborhood, RequiresPositiveRadius) {
  EXPECT_THROW(pm::eps_neighborhood(std::vector<Rat>{Rat(0)}, Rat(0)), pm::ValidationError);
  EXPECT_THROW(pm::eps_neighborhood(std::vector<Rat>{Rat(0)}, Rat(-1)), pm::ValidationError);
}

TEST(FiniteSpace, NeighborhoodUsesStrictInequality) {
  auto s = path_space();
  pm::PointSet a = pm::PointSet::on_space(s, {0});
  EXPECT_EQ(pm::eps_neighborhood(a, Rat(1)).indices, (std::vector<std::size_t>{0}));
  EXPECT_EQ(pm::eps_neighborhood(a, Rat(3) / 2).indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(pm::eps_neighborhood(a, Rat(5) / 2).indices, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(FiniteSpace, ValidatesMatrix) {
  std::vector<std::vector<Rat>> bad_sym = {{Rat(0), Rat(1)}, {Rat(2), Rat(0)}};
  EXPECT_THROW(pm::FiniteMetricSpace{bad_sym}, pm::ValidationError);
  std::vector<std::vector<Rat>> bad_diag = {{Rat(1), Rat(1)}, {Rat(1), Rat(0)}};
  EXPECT_THROW(pm::FiniteMetricSpace{bad_diag}, pm::ValidationError);
  std::vector<std::vector<Rat>> bad_tri = {{Rat(0), Rat(1), Rat(5)},
                                           {Rat(1), Rat(0), Rat(1)},
                                           {Rat(5), Rat(1), Rat(0)}};
  EXPECT_THROW(pm::FiniteMetricSpace{bad_tri}, pm::ValidationError);
  std::vector<std::vector<Rat>> bad_pos = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
  EXPECT_THROW(pm::FiniteMetricSpace{bad_pos}, pm::ValidationError);
}

TEST(PointSet, FactoriesSortAndValidate) {
  pm::PointSet p = pm::PointSet::on_line({Rat(3), Rat(1), Rat(3)});
  EXPECT_EQ(p.coords, (std::vector<Rat>{Rat(1), Rat(3)}));
  auto s = path_space();
  EXPECT_THROW(pm::PointSet::on_space(s, {5}), pm::ValidationError);
}
