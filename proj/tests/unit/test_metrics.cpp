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
#include <algorithm>
#include <numeric>
#include <set>

#include "cadseq/error.h"
#include "cadseq/topology.h"
#include "doctest.h"
#include "generators.h"
#include "oracles.h"

namespace cadseq {
namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const CadError& e) {
    return e.code();
  }
  FAIL("expected a CadError");
  return ErrorCode::Io;
}

TriMesh Cube() { return testing::BoxMesh({0, 0, 0}, {1, 1, 1}); }

TriMesh LoneTriangle() {
  return TriMesh{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}};
}

TEST_CASE("half-edge index of a cube") {
  const HalfEdgeIndex index(Cube());
  CHECK(index.half_edges().size() == 36);
  CHECK(index.edges().size() == 18);
  for (const EdgeIncidence& e : index.edges()) CHECK(e.faces == 2);
  for (const HalfEdge& h : index.half_edges()) {
    REQUIRE(h.twin >= 0);
    CHECK(index.half_edges()[h.twin].tail == h.head);
    CHECK(index.half_edges()[h.twin].head == h.tail);
  }
  CHECK(index.DanglingCount() == 0);
  CHECK(index.NonManifoldCount() == 0);
}

TEST_CASE("half-edge index of a lone triangle and a fin") {
  const HalfEdgeIndex lone(LoneTriangle());
  CHECK(lone.edges().size() == 3);
  CHECK(lone.DanglingCount() == 3);

  TriMesh fin{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}},
              {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}};
  const HalfEdgeIndex index(fin);
  CHECK(index.Incidence(0, 1) == 3);
  CHECK(index.Incidence(1, 0) == 3);
  CHECK(index.NonManifoldCount() == 1);
  CHECK(DanglingEdgeLength(fin) == doctest::Approx(testing::DirectDanglingLength(fin)));
  CHECK(testing::DirectDanglingLength(fin) == doctest::Approx(3 * (1 + std::sqrt(2.0))));

  CHECK(CodeOf([] { HalfEdgeIndex(TriMesh{{{0, 0, 0}}, {{0, 0, 1}}}); }) ==
        ErrorCode::InvalidFaceIndex);
  CHECK(CodeOf([] { HalfEdgeIndex(TriMesh{{{0, 0, 0}}, {{0, 1, 2}}}); }) ==
        ErrorCode::InvalidFaceIndex);
}

TEST_CASE("segment counts") {
  CHECK(SegmentCount(Cube()) == 1);
  CHECK(SegmentCount(Concatenate(Cube(), testing::BoxMesh({2, 0, 0}, {3, 1, 1}))) == 2);
  CHECK(SegmentCount(TriMesh{}) == 0);

  testing::Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const TriMesh m = testing::RandomGraphMesh(rng, testing::UniformInt(rng, 3, 200),
                                               testing::UniformInt(rng, 1, 80));
    CHECK(SegmentCount(m) == testing::BfsSegments(m));
  }
}

TEST_CASE("segment counts add over disjoint parts") {
  TriMesh scene;
  for (int k = 0; k < 5; ++k) {
    scene = Concatenate(scene, testing::BoxMesh({3.0 * k, 0, 0}, {3.0 * k + 1, 1, 1}));
    CHECK(SegmentCount(scene) == k + 1);
  }
}

TEST_CASE("segment error") {
  const TriMesh two = Concatenate(Cube(), testing::BoxMesh({2, 0, 0}, {3, 1, 1}));
  const TriMesh three = Concatenate(two, testing::BoxMesh({4, 0, 0}, {5, 1, 1}));
  CHECK(SegmentError(two, two) == 0);
  CHECK(SegmentError(two, three) == 0.5);
  CHECK(SegmentError(Cube(), two) == 1.0);
  CHECK(CodeOf([&] { SegmentError(TriMesh{}, two); }) == ErrorCode::EmptyGroundTruth);
}

TEST_CASE("dangling edge length") {
  CHECK(DanglingEdgeLength(Cube()) == 0);
  CHECK(DanglingEdgeLength(LoneTriangle()) == doctest::Approx(2 + std::sqrt(2.0)));

  TriMesh open = Cube();
  open.faces.erase(open.faces.begin(), open.faces.begin() + 2);
  CHECK(DanglingEdgeLength(open) == doctest::Approx(4.0));
  CHECK(testing::DirectDanglingLength(open) == doctest::Approx(4.0));

  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const TriMesh m = testing::RandomGraphMesh(rng, testing::UniformInt(rng, 3, 30),
                                               testing::UniformInt(rng, 1, 60));
    CHECK(DanglingEdgeLength(m) == doctest::Approx(testing::DirectDanglingLength(m)).epsilon(1e-12));
  }
}

TEST_CASE("triangle pairs") {
  const std::array<Vec3, 3> flat{Vec3{0, 0, 0}, Vec3{2, 0, 0}, Vec3{0, 2, 0}};
  const std::array<Vec3, 3> pierce{Vec3{0.5, 0.5, -1}, Vec3{0.5, 0.5, 1}, Vec3{0.6, 0.7, 0}};
  const std::array<Vec3, 3> above{Vec3{0, 0, 1}, Vec3{1, 0, 1}, Vec3{0, 1, 1}};
  const std::array<Vec3, 3> touch{Vec3{0.5, 0.5, 0}, Vec3{0.5, 0.5, 1}, Vec3{0.6, 0.7, 1}};
  const std::array<Vec3, 3> overlap{Vec3{0.5, 0.5, 0}, Vec3{3, 0.5, 0}, Vec3{0.5, 3, 0}};
  const std::array<Vec3, 3> edge_touch{Vec3{2, 0, 0}, Vec3{0, 2, 0}, Vec3{2, 2, 0}};
  CHECK(TrianglesIntersect(flat, pierce));
  CHECK(TrianglesIntersect(pierce, flat));
  CHECK_FALSE(TrianglesIntersect(flat, above));
  CHECK_FALSE(TrianglesIntersect(flat, touch));
  CHECK(TrianglesIntersect(flat, overlap));
  CHECK_FALSE(TrianglesIntersect(flat, edge_touch));
}

TEST_CASE("self-intersection ratio") {
  CHECK(SelfIntersectionRatio(Cube()) == 0);
  TriMesh m{{{0, 0, 0}, {2, 0, 0}, {0, 2, 0},
             {0.5, 0.5, -1}, {0.5, 0.5, 1}, {0.6, 0.7, 0},
             {10, 0, 0}, {11, 0, 0}, {10, 1, 0},
             {20, 0, 0}, {21, 0, 0}, {20, 1, 0}},
            {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}}};
  CHECK(SelfIntersectionRatio(m) == 0.5);
  CHECK(SelfIntersectionRatio(m, SearchMode::BruteForce) == 0.5);
  CHECK(CodeOf([] { SelfIntersectionRatio(TriMesh{}); }) == ErrorCode::EmptyMesh);
}

TEST_CASE("accelerated self-intersection matches brute force") {
  testing::Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const TriMesh m = testing::RandomTriangleSoup(rng, testing::UniformInt(rng, 2, 500),
                                                  testing::Uniform(rng, 0.02, 0.2));
    CHECK(SelfIntersectingFaces(m) == SelfIntersectingFaces(m, SearchMode::BruteForce));
  }
}

TEST_CASE("self-intersection ratio ignores vertex order and rigid motion") {
  testing::Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const TriMesh m = testing::RandomTriangleSoup(rng, 150, 0.15);
    const double sir = SelfIntersectionRatio(m);

    TriMesh permuted = m;
    std::vector<int> perm(m.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (size_t v = 0; v < perm.size(); ++v) permuted.vertices[perm[v]] = m.vertices[v];
    for (auto& f : permuted.faces) {
      for (int& idx : f) idx = perm[idx];
    }
    CHECK(SelfIntersectionRatio(permuted) == sir);

    const double c = std::cos(0.7), s = std::sin(0.7);
    TriMesh moved = m;
    for (Vec3& p : moved.vertices) p = Vec3{c * p.x - s * p.y, s * p.x + c * p.y, p.z} + Vec3{3, -2, 1};
    CHECK(SelfIntersectionRatio(moved) == sir);
  }
}

TEST_CASE("flux through closed and open surfaces") {
  CHECK(FluxEnclosureError(Cube()) < 1e-12);
  CHECK(FluxEnclosureError(LoneTriangle()) == 0.5);

  TriMesh flipped = Cube();
  int flips = 0;
  for (size_t f = 0; f < flipped.faces.size(); ++f) {
    if (FaceNormal(flipped, f).x > 0.5) {
      std::swap(flipped.faces[f][1], flipped.faces[f][2]);
      ++flips;
    }
  }
  CHECK(flips == 2);
  CHECK(FluxEnclosureError(flipped) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(FluxEnclosureError(TriMesh{}) == 0);
}

TEST_CASE("flipping one face of a closed mesh adds twice its flux") {
  testing::Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const Vec3 lo{testing::Uniform(rng, -1, 1), testing::Uniform(rng, -1, 1),
                  testing::Uniform(rng, -1, 1)};
    const TriMesh m = Transformed(testing::BoxMesh(lo, lo + Vec3{0.5, 0.7, 0.9}), 1, {});
    const size_t f = testing::UniformInt(rng, 0, 11);
    const Vec3 n = FaceNormal(m, f);
    const double expected = std::abs(2 * (n.x + n.y + n.z) * FaceArea(m, f));
    TriMesh flipped = m;
    std::swap(flipped.faces[f][1], flipped.faces[f][2]);
    CHECK(std::abs(FluxEnclosureError(flipped) - expected) <= 1e-9);
  }
}

TEST_CASE("metric scaling") {
  TriMesh open = Concatenate(Cube(), LoneTriangle());
  open.faces.pop_back();
  open = Concatenate(open, Transformed(LoneTriangle(), 1, {5, 5, 5}));
  const double d = DanglingEdgeLength(open), f = FluxEnclosureError(open);
  for (double s : {0.5, 2.0, 7.0}) {
    const TriMesh scaled = Transformed(open, s, {1, 2, 3});
    CHECK(DanglingEdgeLength(scaled) == doctest::Approx(s * d));
    CHECK(FluxEnclosureError(scaled) == doctest::Approx(s * s * f));
    CHECK(SelfIntersectionRatio(scaled) == SelfIntersectionRatio(open));
    CHECK(SegmentError(open, scaled) == 0);
  }
}

TEST_CASE("topology report") {
  const TopoReport same = MakeTopoReport(Cube(), Cube());
  CHECK(same.segments == 1);
  CHECK(same.seg_error == 0);
  CHECK(same.dangel == 0);
  CHECK(same.sir_pct == 0);
  CHECK(same.fluxee_x100 == doctest::Approx(0).epsilon(1e-10));

  const TriMesh two = Concatenate(Cube(), testing::BoxMesh({2, 0, 0}, {3, 1, 1}));
  CHECK(MakeTopoReport(Cube(), two).seg_error == 1.0);

  const TopoReport empty = MakeTopoReport(Cube(), TriMesh{});
  CHECK(empty.seg_error == 1.0);
  CHECK(empty.dangel == 0);
  CHECK(empty.sir_pct == 0);
  CHECK(empty.fluxee_x100 == 0);

  testing::Rng rng(10);
  const TriMesh soup = testing::RandomTriangleSoup(rng, 100, 0.2);
  const TopoReport r = MakeTopoReport(Cube(), soup);
  CHECK(r.segments == SegmentCount(soup));
  CHECK(r.seg_error == SegmentError(Cube(), soup));
  CHECK(r.dangel == DanglingEdgeLength(soup));
  CHECK(r.sir_pct == 100 * SelfIntersectionRatio(soup));
  CHECK(r.fluxee_x100 == 100 * FluxEnclosureError(soup));
}

}  // namespace
}  // namespace cadseq
