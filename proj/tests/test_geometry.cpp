#include <gtest/gtest.h>

#include <random>

#include "extcvx/geometry.hpp"
#include "extcvx/interval.hpp"

using namespace extcvx;

namespace {

ConvexPoly2 square() { return ConvexPoly2::from_v({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}); }

}  // namespace

TEST(Geometry, SquareBothRepresentations) {
  const ConvexPoly2 s = square();
  EXPECT_EQ(s.points().size(), 4u);
  EXPECT_EQ(s.h().size(), 4u);
  EXPECT_TRUE(s.rays().empty());
  const ConvexPoly2 h = ConvexPoly2::from_h({{Vec2(1, 0), 1}, {Vec2(-1, 0), 0}, {Vec2(0, 1), 1}, {Vec2(0, -1), 0}});
  EXPECT_TRUE(h.same_set(s));
  EXPECT_TRUE(s.contains(Vec2(0.5, 0.5)));
  EXPECT_FALSE(s.contains(Vec2(1.5, 0.5)));
  EXPECT_EQ(s.support(Vec2(1, 1)), 2.0);
}

TEST(Geometry, RedundantPointsDropped) {
  const ConvexPoly2 s = ConvexPoly2::from_v({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}}, {});
  EXPECT_EQ(s.points().size(), 4u);
}

TEST(Geometry, CounterclockwiseOrder) {
  const ConvexPoly2 s = ConvexPoly2::from_v({{1, 1}, {0, 0}, {0, 1}, {1, 0}}, {});
  const auto& p = s.points();
  double area = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % p.size()];
    area += a.x() * b.y() - a.y() * b.x();
  }
  EXPECT_GT(area, 0.0);
}

TEST(Geometry, UnboundedShapes) {
  const ConvexPoly2 quad = ConvexPoly2::from_v({{0, 0}}, {{1, 0}, {0, 1}});
  EXPECT_TRUE(quad.contains(Vec2(5, 7)));
  EXPECT_FALSE(quad.contains(Vec2(-1, 0)));
  EXPECT_TRUE(quad.recedes(Vec2(1, 1)));
  EXPECT_EQ(quad.support(Vec2(1, 0)), kInf);
  EXPECT_EQ(quad.support(Vec2(-1, -1)), 0.0);

  const ConvexPoly2 half = ConvexPoly2::from_h({{Vec2(0, -1), 0}});
  EXPECT_TRUE(half.contains(Vec2(-100, 3)));
  EXPECT_TRUE(half.recedes(Vec2(-1, 0)) && half.recedes(Vec2(1, 0)));

  const ConvexPoly2 line = ConvexPoly2::from_v({{0, 1}}, {{1, 0}, {-1, 0}});
  EXPECT_TRUE(line.contains(Vec2(42, 1)));
  EXPECT_FALSE(line.contains(Vec2(0, 1.1)));
}

TEST(Geometry, LowerDimensionalSets) {
  const ConvexPoly2 seg = ConvexPoly2::from_v({{0, 0}, {2, 2}}, {});
  EXPECT_TRUE(seg.contains(Vec2(1, 1)));
  EXPECT_FALSE(seg.contains(Vec2(1, 1.01)));
  const ConvexPoly2 pt = ConvexPoly2::from_v({{3, -1}}, {});
  EXPECT_TRUE(pt.contains(Vec2(3, -1)));
  EXPECT_EQ(pt.points().size(), 1u);
  EXPECT_TRUE(ConvexPoly2::from_h({{Vec2(1, 0), 0}, {Vec2(-1, 0), -1}}).is_empty());
}

TEST(Geometry, WholeAndEmpty) {
  EXPECT_TRUE(ConvexPoly2::whole().is_whole());
  EXPECT_TRUE(ConvexPoly2::empty().is_empty());
  EXPECT_EQ(ConvexPoly2::empty().support(Vec2(1, 0)), -kInf);
  EXPECT_TRUE(minkowski(square(), ConvexPoly2::empty()).is_empty());
  EXPECT_TRUE(intersect(square(), ConvexPoly2::whole()).same_set(square()));
}

TEST(Geometry, MinkowskiAndIntersection) {
  const ConvexPoly2 quad = ConvexPoly2::from_v({{0, 0}}, {{1, 0}, {0, 1}});
  const ConvexPoly2 sum = minkowski(quad.translate(Vec2(1, 0)), quad.translate(Vec2(0, 1)));
  EXPECT_TRUE(sum.same_set(quad.translate(Vec2(1, 1))));
  const ConvexPoly2 cap = intersect(quad.translate(Vec2(1, 0)), quad.translate(Vec2(0, 1)));
  EXPECT_TRUE(cap.same_set(quad.translate(Vec2(1, 1))));
  const ConvexPoly2 hull = hull_union(std::vector<ConvexPoly2>{quad.translate(Vec2(1, 0)), quad.translate(Vec2(0, 1))});
  EXPECT_TRUE(hull.same_set(ConvexPoly2::from_v({{1, 0}, {0, 1}}, {{1, 0}, {0, 1}})));
}

TEST(Geometry, ScaleRejectsNonPositive) {
  EXPECT_THROW(square().scale(0.0), std::invalid_argument);
  EXPECT_TRUE(square().scale(2.0).contains(Vec2(2, 2)));
}

TEST(Geometry, RandomRepresentationRoundTrip) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> coord(-16, 16);
  for (int i = 0; i < 200; ++i) {
    std::vector<Vec2> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(Vec2(coord(rng) / 4.0, coord(rng) / 4.0));
    std::vector<Vec2> rays;
    if (i % 3 == 0) rays.push_back(Vec2(coord(rng), coord(rng) + 17));
    const ConvexPoly2 v = ConvexPoly2::from_v(pts, rays);
    const ConvexPoly2 h = ConvexPoly2::from_h(v.h());
    EXPECT_TRUE(v.same_set(h));
    for (const auto& p : pts) EXPECT_TRUE(v.contains(p));
    for (const auto& p : v.points()) EXPECT_TRUE(h.contains(p));
    EXPECT_LT(vertex_hausdorff(v, h), 1e-9);
  }
}

TEST(Geometry, Polyhedron3Cube) {
  std::vector<Vec3> pts;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) pts.push_back(Vec3(a, b, c));
  const Polyhedron3 cube = Polyhedron3::from_v(pts, {});
  EXPECT_EQ(cube.points().size(), 8u);
  EXPECT_EQ(cube.h().size(), 6u);
  EXPECT_TRUE(cube.contains(Vec3(0.5, 0.5, 0.5)));
  EXPECT_FALSE(cube.contains(Vec3(0.5, 0.5, 1.5)));
  EXPECT_TRUE(Polyhedron3::from_h(cube.h()).same_set(cube));
}

TEST(Geometry, DualCones) {
  const Cone2 quad = Cone2::generated({{1, 0}, {0, 1}});
  EXPECT_TRUE(dual_cone(quad).poly().same_set(ConvexPoly2::from_v({{0, 0}}, {{-1, 0}, {0, -1}})));
  const Cone2 ray = Cone2::generated({{0, 1}});
  EXPECT_TRUE(dual_cone(ray).poly().same_set(ConvexPoly2::from_h({{Vec2(0, 1), 0}})));
  EXPECT_TRUE(dual_cone(Cone2()).poly().is_whole());
  EXPECT_TRUE(dual_cone(Cone2::generated({{1, 0}, {-1, 0}, {0, 1}, {0, -1}})).is_zero());
  EXPECT_TRUE(negate(quad).contains(Vec2(-1, -2)));
  EXPECT_THROW(Cone2::from_poly(ConvexPoly2::from_v({{1, 0}}, {})), std::invalid_argument);
}
