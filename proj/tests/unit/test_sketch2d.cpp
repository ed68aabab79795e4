// Copyright 2026 The cadseq Authors.
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

#include <cmath>
#include <numbers>

#include "cadseq/error.h"
#include "cadseq/sketch2d.h"
#include "doctest.h"
#include "generators.h"

namespace cadseq {
namespace {

constexpr double kPi = std::numbers::pi;

double TrianglesArea(const std::vector<Triangle2>& tris) {
  double area = 0;
  for (const Triangle2& t : tris) area += Orient2d(t[0], t[1], t[2]) / 2;
  return area;
}

bool SegmentsCross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = Orient2d(a, b, c), d2 = Orient2d(a, b, d);
  const double d3 = Orient2d(c, d, a), d4 = Orient2d(c, d, b);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// Brute-force check that no two non-adjacent ring edges cross.
bool RingsSimple(const PolygonWithHoles& poly) {
  std::vector<std::pair<Vec2, Vec2>> edges;
  auto add = [&](const Polyline2& ring) {
    for (size_t i = 0; i < ring.points.size(); ++i) {
      edges.push_back({ring.points[i], ring.points[(i + 1) % ring.points.size()]});
    }
  };
  add(poly.outer);
  for (const Polyline2& h : poly.holes) add(h);
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      if (SegmentsCross(edges[i].first, edges[i].second, edges[j].first, edges[j].second)) {
        return false;
      }
    }
  }
  return true;
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const CadError& e) {
    return e.code();
  }
  FAIL("expected a CadError");
  return ErrorCode::Io;
}

TEST_CASE("chained curves start where their predecessor ends") {
  const auto chain = ChainLoop(testing::RectLoop(1, 1));
  REQUIRE(chain.size() == 4);
  CHECK(chain[0].start == Vec2{0, 0});
  CHECK(chain[1].start == Vec2{1, 0});
  CHECK(chain[2].start == Vec2{1, 1});
  CHECK(chain[3].start == Vec2{0, 1});

  const auto circle = ChainLoop(testing::CircleLoop(0.2, 0.3, 0.1));
  REQUIRE(circle.size() == 1);
  CHECK(circle[0].start == Vec2{0.2, 0.3});

  const Loop open{{Line{{0.5, 0}}, Line{{0.3, 0.3}}}};
  CHECK(CodeOf([&] { ChainLoop(open); }) == ErrorCode::OpenLoop);
}

TEST_CASE("semicircle arc is centred on its chord") {
  const ArcGeometry g = ResolveArc(Arc{{0.5, 0}, kPi, true}, {0, 0});
  CHECK(g.center.x == doctest::Approx(0.25));
  CHECK(std::abs(g.center.y) < 1e-15);
  CHECK(g.radius == doctest::Approx(0.25));
  CHECK(g.sweep == doctest::Approx(kPi));

  const ArcGeometry cw = ResolveArc(Arc{{1, 0}, kPi / 2, false}, {0, 0});
  CHECK(cw.center.y == doctest::Approx(-0.5));
  CHECK(cw.sweep == doctest::Approx(-kPi / 2));
}

TEST_CASE("circle discretizes to a regular polygon") {
  const double r = 0.5;
  const Polyline2 p = DiscretizeCurve(Circle{{0.1, -0.2}, r}, {0.1, -0.2}, 64);
  CHECK(p.closed);
  CHECK(p.points.size() == 64);
  CHECK(SignedArea(p.points) ==
        doctest::Approx(0.5 * 64 * r * r * std::sin(2 * kPi / 64)).epsilon(1e-12));
}

TEST_CASE("line discretizes to its endpoints") {
  const Polyline2 p = DiscretizeCurve(Line{{0.3, 0.4}}, {0, 0});
  REQUIRE(p.points.size() == 2);
  CHECK(Length(p.points[1] - p.points[0]) == doctest::Approx(0.5));
}

TEST_CASE("arc discretization keeps exact endpoints") {
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vec2 s{testing::Uniform(rng, -1, 1), testing::Uniform(rng, -1, 1)};
    const Vec2 e{testing::Uniform(rng, -1, 1), testing::Uniform(rng, -1, 1)};
    const double alpha = testing::Uniform(rng, 0.05, 2 * kPi - 0.05);
    const int n = testing::UniformInt(rng, 8, 128);
    const Polyline2 p = DiscretizeCurve(Arc{e, alpha, i % 2 == 0}, s, n);
    CHECK(p.points.front() == s);
    CHECK(p.points.back() == e);
    CHECK(p.points.size() ==
          static_cast<size_t>(std::max(1.0, std::ceil(n * alpha / (2 * kPi) - 1e-9))) + 1);
    const ArcGeometry g = ResolveArc(Arc{e, alpha, i % 2 == 0}, s);
    for (const Vec2& q : p.points) CHECK(Length(q - g.center) == doctest::Approx(g.radius));
  }
}

TEST_CASE("degenerate arcs are rejected") {
  CHECK(CodeOf([] { DiscretizeCurve(Arc{{1, 0}, 0.0, true}, {0, 0}); }) ==
        ErrorCode::DegenerateArc);
  CHECK(CodeOf([] { DiscretizeCurve(Arc{{0, 0}, 1.0, true}, {0, 0}); }) ==
        ErrorCode::DegenerateArc);
}

TEST_CASE("square with inner circle becomes one region with a hole") {
  Profile p{{testing::RectLoop(1, 1), testing::CircleLoop(0.5, 0.5, 0.2)}};
  const auto regions = AssembleProfile(p);
  REQUIRE(regions.size() == 1);
  REQUIRE(regions[0].holes.size() == 1);
  CHECK(SignedArea(regions[0].outer.points) > 0);
  CHECK(SignedArea(regions[0].holes[0].points) < 0);
}

TEST_CASE("counter-clockwise hole input is reversed") {
  Profile p{{testing::CircleLoop(0, 0, 0.9), testing::RectLoop(0.3, 0.3)}};
  REQUIRE(SignedArea(DiscretizeLoop(p.loops[1]).points) > 0);
  const PolygonWithHoles poly = AssembleSingleRegion(p);
  REQUIRE(poly.holes.size() == 1);
  CHECK(SignedArea(poly.holes[0].points) == doctest::Approx(-0.09));
}

TEST_CASE("disjoint loops form separate regions") {
  Profile p{{testing::RectLoop(0.5, 0.5), testing::CircleLoop(-0.5, -0.5, 0.2)}};
  CHECK(AssembleProfile(p).size() == 2);
  CHECK(CodeOf([&] { AssembleSingleRegion(p); }) == ErrorCode::MultipleOuterLoops);
}

TEST_CASE("nested islands alternate between outer and hole") {
  Profile p{{testing::CircleLoop(0, 0, 0.9), testing::CircleLoop(0, 0, 0.6),
             testing::CircleLoop(0, 0, 0.3)}};
  const auto regions = AssembleProfile(p);
  REQUIRE(regions.size() == 2);
  CHECK(regions[0].holes.size() + regions[1].holes.size() == 1);
}

TEST_CASE("crossing loops are rejected") {
  Profile p{{testing::CircleLoop(0, 0, 0.5), testing::CircleLoop(0.4, 0, 0.5)}};
  CHECK(CodeOf([&] { AssembleProfile(p); }) == ErrorCode::CrossingLoops);
  Profile bowtie{{Loop{{Line{{1, 1}}, Line{{1, 0}}, Line{{0, 1}}, Line{{0, 0}}}}}};
  CHECK(CodeOf([&] { AssembleProfile(bowtie); }) == ErrorCode::CrossingLoops);
}

TEST_CASE("unit square triangulates into two triangles") {
  const auto tris = Triangulate(AssembleSingleRegion(Profile{{testing::RectLoop(1, 1)}}));
  CHECK(tris.size() == 2);
  CHECK(TrianglesArea(tris) == doctest::Approx(1));
}

TEST_CASE("square with square hole gives v - 2 triangles after bridging") {
  PolygonWithHoles poly;
  poly.outer = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
  poly.holes.push_back({{{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}, {0.75, 0.25}}, true});
  const auto tris = Triangulate(poly);
  CHECK(tris.size() == 8);
  CHECK(TrianglesArea(tris) == doctest::Approx(0.75).epsilon(1e-12));
  for (const Triangle2& t : tris) CHECK(Orient2d(t[0], t[1], t[2]) > 0);
}

TEST_CASE("several holes, including ones sharing an x coordinate") {
  PolygonWithHoles poly;
  poly.outer = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
  poly.holes.push_back({{{0.1, 0.1}, {0.1, 0.3}, {0.3, 0.3}, {0.3, 0.1}}, true});
  poly.holes.push_back({{{0.1, 0.6}, {0.1, 0.8}, {0.3, 0.8}, {0.3, 0.6}}, true});
  poly.holes.push_back({{{0.6, 0.4}, {0.6, 0.6}, {0.8, 0.6}, {0.8, 0.4}}, true});
  const auto tris = Triangulate(poly);
  CHECK(tris.size() == 4 + 12 + 2 * 3 - 2);
  CHECK(TrianglesArea(tris) == doctest::Approx(1 - 3 * 0.04).epsilon(1e-12));
}

TEST_CASE("triangulated area matches the shoelace formula on fuzzed profiles") {
  testing::Rng rng(17);
  testing::SequenceGenOptions options;
  for (int i = 0; i < 500; ++i) {
    const Profile profile = testing::RandomProfile(rng, options);
    for (const PolygonWithHoles& poly : AssembleProfile(profile)) {
      double shoelace = SignedArea(poly.outer.points);
      for (const Polyline2& h : poly.holes) shoelace += SignedArea(h.points);
      const auto tris = Triangulate(poly);
      CHECK(std::abs(TrianglesArea(tris) - shoelace) <= 1e-9);
      size_t vertices = poly.outer.points.size();
      for (const Polyline2& h : poly.holes) vertices += h.points.size();
      CHECK(tris.size() == vertices - 2 + 2 * poly.holes.size());
      for (const Triangle2& t : tris) CHECK(Orient2d(t[0], t[1], t[2]) > 0);
      CHECK(RingsSimple(poly));
    }
  }
}

TEST_CASE("tiny regions are degenerate") {
  PolygonWithHoles poly;
  poly.outer = {{{0, 0}, {1e-7, 0}, {1e-7, 1e-7}}, true};
  CHECK(CodeOf([&] { Triangulate(poly); }) == ErrorCode::DegenerateRegion);
}

TEST_CASE("point in ring") {
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(PointInRing({0.5, 0.5}, square));
  CHECK_FALSE(PointInRing({1.5, 0.5}, square));
}

}  // namespace
}  // namespace cadseq
