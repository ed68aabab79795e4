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
#include <sstream>

#include "cadseq/error.h"
#include "cadseq/kernel.h"
#include "cadseq/topology.h"
#include "doctest.h"
#include "generators.h"

namespace cadseq {
namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const CadError& e) {
    return e.code();
  }
  FAIL("expected a CadError");
  return ErrorCode::Io;
}

std::vector<PolygonWithHoles> Square() {
  return AssembleProfile(Profile{{testing::RectLoop(1, 1)}});
}

PlaneFrame Identity() { return MakePlaneFrame(0, 0, 0, {0, 0, 0}, 1); }

void CheckClosed(const TriMesh& m) {
  CHECK(DanglingEdgeLength(m) == 0);
  CHECK(FluxEnclosureError(m) < 1e-9 * SurfaceArea(m));
  CHECK(SignedVolume(m) > 0);
}

TEST_CASE("plane frame from Euler angles") {
  const PlaneFrame id = Identity();
  CHECK(id.XAxis() == Vec3{1, 0, 0});
  CHECK(id.YAxis() == Vec3{0, 1, 0});
  CHECK(id.Normal() == Vec3{0, 0, 1});

  const PlaneFrame scaled = MakePlaneFrame(0, 0, 0, {0, 0, 0}, 2);
  CHECK(scaled.ToWorld({1, 0}) == Vec3{2, 0, 0});

  const PlaneFrame tilted = MakePlaneFrame(0, kPi / 2, 0, {0, 0, 0}, 1);
  CHECK(Distance(tilted.Normal(), {1, 0, 0}) < 1e-15);

  testing::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const PlaneFrame f = MakePlaneFrame(testing::Uniform(rng, -kPi, kPi),
                                        testing::Uniform(rng, -kPi, kPi),
                                        testing::Uniform(rng, -kPi, kPi), {0, 0, 0}, 1);
    double frob = 0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        double dot = 0;
        for (int k = 0; k < 3; ++k) dot += f.rotation[k][r] * f.rotation[k][c];
        frob += std::pow(dot - (r == c ? 1 : 0), 2);
      }
    }
    CHECK(std::sqrt(frob) < 1e-12);
    CHECK(Dot(Cross(f.XAxis(), f.YAxis()), f.Normal()) == doctest::Approx(1));
  }
  CHECK(CodeOf([] { MakePlaneFrame(0, 0, 0, {0, 0, 0}, 0); }) == ErrorCode::NonPositiveScale);
}

TEST_CASE("extent kinds resolve to intervals") {
  CHECK(ResolveExtent(1, 0.5, ExtentKind::OneSided) == std::pair{0.0, 1.0});
  CHECK(ResolveExtent(1, 0.5, ExtentKind::TwoSided) == std::pair{-0.5, 1.0});
  CHECK(ResolveExtent(1, 0.5, ExtentKind::Symmetric) == std::pair{-0.5, 0.5});
}

TEST_CASE("unit square extrudes into a twelve-face box") {
  const TriMesh box = ExtrudeProfile(Square(), Identity(), 1, 0, ExtentKind::OneSided);
  CHECK(box.faces.size() == 12);
  CHECK(SignedVolume(box) == doctest::Approx(1).epsilon(1e-12));
  CheckClosed(box);

  const TriMesh two = ExtrudeProfile(Square(), Identity(), 0.5, 0.5, ExtentKind::TwoSided);
  const Aabb b = BoundingBox(two);
  CHECK(b.min.z == doctest::Approx(-0.5));
  CHECK(b.max.z == doctest::Approx(0.5));
  CHECK(SignedVolume(two) == doctest::Approx(1));

  const TriMesh sym = ExtrudeProfile(Square(), Identity(), 1, 0.7, ExtentKind::Symmetric);
  CHECK(BoundingBox(sym).min.z == doctest::Approx(-0.5));
  CHECK(BoundingBox(sym).max.z == doctest::Approx(0.5));

  CHECK(CodeOf([] { ExtrudeProfile(Square(), Identity(), 0, 1, ExtentKind::OneSided); }) ==
        ErrorCode::EmptyExtent);
}

TEST_CASE("extrusion with a hole is watertight") {
  const auto regions =
      AssembleProfile(Profile{{testing::RectLoop(1, 1), testing::CircleLoop(0.5, 0.5, 0.2)}});
  const TriMesh m = ExtrudeProfile(regions, Identity(), 0.3, 0, ExtentKind::OneSided);
  CheckClosed(m);
  CHECK(SegmentCount(m) == 1);
}

TEST_CASE("fuzzed single extrusions are closed and outward") {
  testing::Rng rng(2);
  testing::SequenceGenOptions options;
  options.max_steps = 1;
  for (int i = 0; i < 200; ++i) {
    const CadSequence seq = testing::RandomSequence(rng, options);
    const TriMesh m = ExtrudeStep(seq.steps[0]);
    CheckClosed(m);
    CHECK(CheckMeshInvariants(m).empty());
    CHECK(SegmentCount(m) == static_cast<int>(AssembleProfile(seq.steps[0].profile).size()));
  }
}

TEST_CASE("booleans on unit cubes") {
  const TriMesh a = testing::BoxMesh({0, 0, 0}, {1, 1, 1});
  const TriMesh far = testing::BoxMesh({3, 0, 0}, {4, 1, 1});
  const TriMesh shifted = testing::BoxMesh({0.5, 0, 0}, {1.5, 1, 1});

  const TriMesh join = BooleanOp(a, far, BooleanKind::Join);
  CHECK(SignedVolume(join) == doctest::Approx(2).epsilon(1e-12));
  CHECK(SegmentCount(join) == 2);

  CHECK(SignedVolume(BooleanOp(a, a, BooleanKind::Intersect)) ==
        doctest::Approx(1).epsilon(1e-9));
  const TriMesh cut = BooleanOp(a, shifted, BooleanKind::Cut);
  CHECK(std::abs(SignedVolume(cut) - 0.5) < 1e-9);
  CheckClosed(cut);

  const TriMesh merged = BooleanOp(a, shifted, BooleanKind::Join);
  CHECK(std::abs(SignedVolume(merged) - 1.5) < 1e-9);
  CheckClosed(merged);
  CHECK(SegmentCount(merged) == 1);

  CHECK(BooleanOp(a, far, BooleanKind::Intersect).Empty());
  CHECK(BooleanOp(a, a, BooleanKind::Cut).Empty());

  TriMesh open = a;
  open.faces.pop_back();
  CHECK(CodeOf([&] { BooleanOp(open, a, BooleanKind::Join); }) == ErrorCode::OpenInputMesh);
}

TEST_CASE("box-pair boolean algebra") {
  testing::Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    auto box = [&] {
      const Vec3 lo{testing::Uniform(rng, 0, 1), testing::Uniform(rng, 0, 1),
                    testing::Uniform(rng, 0, 1)};
      return testing::BoxMesh(lo, lo + Vec3{testing::Uniform(rng, 0.2, 1),
                                            testing::Uniform(rng, 0.2, 1),
                                            testing::Uniform(rng, 0.2, 1)});
    };
    const TriMesh a = box(), b = box();
    const double va = SignedVolume(a), vb = SignedVolume(b);
    const double vj = SignedVolume(BooleanOp(a, b, BooleanKind::Join));
    const double vi = SignedVolume(BooleanOp(a, b, BooleanKind::Intersect));
    const double vc = SignedVolume(BooleanOp(a, b, BooleanKind::Cut));
    CHECK(std::abs(vj + vi - va - vb) <= 1e-6 * (va + vb));
    CHECK(std::abs(vc - (va - vi)) <= 1e-6 * va);
  }
}

TEST_CASE("executing sequences") {
  CadSequence cube{{testing::PlanarStep(Profile{{testing::RectLoop(0.5, 0.5)}}, {0, 0, 0}, 0.8,
                                        BooleanKind::NewBody)}};
  CHECK(SignedVolume(ExecuteSequence(cube)) == doctest::Approx(0.25 * 0.8));

  CadSequence joined = cube;
  joined.steps.push_back(testing::PlanarStep(Profile{{testing::RectLoop(0.5, 0.5)}},
                                             {0.25, 0.25, 0.4}, 0.8, BooleanKind::Join));
  const TriMesh j = ExecuteSequence(joined);
  CHECK(SegmentCount(j) == 1);
  CheckClosed(j);

  CadSequence disjoint = cube;
  disjoint.steps.push_back(testing::PlanarStep(Profile{{testing::RectLoop(0.2, 0.2)}},
                                               {0.7, 0.7, 0}, 0.5, BooleanKind::Intersect));
  CHECK(CodeOf([&] { ExecuteSequence(disjoint); }) == ErrorCode::EmptyResult);

  CadSequence bad = cube;
  bad.steps.push_back(testing::PlanarStep(Profile{{testing::RectLoop(0.2, 0.2)}},
                                          {0, 0, 0}, 0, BooleanKind::Join));
  try {
    ExecuteSequence(bad);
    FAIL("expected EmptyExtent");
  } catch (const CadError& e) {
    CHECK(e.code() == ErrorCode::EmptyExtent);
    CHECK(e.step() == 2);
  }

  const TriMesh first = ExecuteSequence(joined);
  const TriMesh second = ExecuteSequence(joined);
  CHECK(first.faces == second.faces);
  CHECK(first.vertices == second.vertices);
}

TEST_CASE("signed volume and bounding box") {
  const TriMesh cube = testing::BoxMesh({0, 0, 0}, {1, 1, 1});
  CHECK(SignedVolume(cube) == doctest::Approx(1));
  CHECK(SignedVolume(FlipFaces(cube)) == doctest::Approx(-1));
  CHECK(SignedVolume(TriMesh{}) == 0);
  const Aabb box = BoundingBox(cube);
  CHECK(box.min == Vec3{0, 0, 0});
  CHECK(box.max == Vec3{1, 1, 1});
  const Aabb moved = BoundingBox(Transformed(cube, 1, {2, 3, 4}));
  CHECK(moved.min == Vec3{2, 3, 4});
  CHECK(moved.max == Vec3{3, 4, 5});
  CHECK(CodeOf([] { BoundingBox(TriMesh{}); }) == ErrorCode::EmptyMesh);
}

TEST_CASE("OBJ round trip and polygon fans") {
  const TriMesh cube = testing::BoxMesh({0, 0, 0}, {1, 1, 1});
  std::istringstream in(ObjString(cube));
  const TriMesh back = ReadObj(in);
  CHECK(back.faces == cube.faces);
  CHECK(back.vertices == cube.vertices);

  std::istringstream quad("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1/1/1 2/2/2 3 -1\n");
  const TriMesh fan = ReadObj(quad);
  REQUIRE(fan.faces.size() == 2);
  CHECK(fan.faces[1] == std::array<int, 3>{0, 2, 3});

  std::istringstream bad("v 0 0 0\nf 1 2 3\n");
  CHECK(CodeOf([&] { ReadObj(bad); }) == ErrorCode::ParseError);
  CHECK(CodeOf([] { LoadObj("/nonexistent/x.obj"); }) == ErrorCode::Io);
}

TEST_CASE("welding merges duplicated corners") {
  TriMesh soup;
  const TriMesh cube = testing::BoxMesh({0, 0, 0}, {1, 1, 1});
  for (size_t f = 0; f < cube.faces.size(); ++f) {
    const int base = static_cast<int>(soup.vertices.size());
    for (const Vec3& p : cube.Corners(f)) soup.vertices.push_back(p);
    soup.faces.push_back({base, base + 1, base + 2});
  }
  CHECK(DanglingEdgeLength(soup) > 0);
  const TriMesh welded = WeldVertices(soup);
  CHECK(welded.vertices.size() == 8);
  CHECK(DanglingEdgeLength(welded) == 0);
}

}  // namespace
}  // namespace cadseq
