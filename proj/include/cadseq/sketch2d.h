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

#pragma once

#include <array>
#include <vector>

#include "cadseq/cmdseq.h"
#include "cadseq/geometry.h"

namespace cadseq {

inline constexpr int kDefaultArcSegments = 64;

struct Polyline2 {
  std::vector<Vec2> points;
  bool closed = false;
};

/// Outer boundary counter-clockwise, holes clockwise. Closed polylines store
/// each vertex once (no repeated first point).
struct PolygonWithHoles {
  Polyline2 outer;
  std::vector<Polyline2> holes;
};

struct ChainedCurve {
  CurveCommand curve;
  Vec2 start;  // circle: its centre
};

/// Resolves implicit start points: the first curve starts at the plane origin
/// and each later curve at its predecessor's endpoint. Throws OpenLoop when
/// the final endpoint misses the origin by more than `eps`.
std::vector<ChainedCurve> ChainLoop(const Loop& loop, double eps = kRawCloseEps);

/// Line: {start, end}. Arc: ceil(n_arc * alpha / 2pi) + 1 points with exact
/// start and end. Circle: closed n_arc-gon. Throws DegenerateArc.
Polyline2 DiscretizeCurve(const CurveCommand& curve, Vec2 start,
                          int n_arc = kDefaultArcSegments);

struct ArcGeometry {
  Vec2 center;
  double radius;
  double start_angle;
  double sweep;  // signed; positive for counter-clockwise
};

/// Centre and radius of the arc from `start` with the given command.
ArcGeometry ResolveArc(const Arc& arc, Vec2 start);

/// Discretized closed boundary of one loop (vertices listed once).
Polyline2 DiscretizeLoop(const Loop& loop, int n_arc = kDefaultArcSegments,
                         double eps = kRawCloseEps);

/// Twice-unsigned shoelace area sign convention: positive for CCW.
double SignedArea(const std::vector<Vec2>& ring);

/// Discretizes every loop, nests them by containment and orients them. Loops
/// at even nesting depth become outer boundaries, odd depth ones become holes
/// of their immediate parent, so disjoint regions yield several polygons.
/// Throws CrossingLoops when two boundaries (or one boundary with itself)
/// intersect.
std::vector<PolygonWithHoles> AssembleProfile(const Profile& profile,
                                              int n_arc = kDefaultArcSegments,
                                              double eps = kRawCloseEps);

/// Strict variant: throws MultipleOuterLoops unless exactly one region results.
PolygonWithHoles AssembleSingleRegion(const Profile& profile,
                                      int n_arc = kDefaultArcSegments);

/// Even-odd point-in-polygon test.
bool PointInRing(Vec2 p, const std::vector<Vec2>& ring);

/// Index triangles into the vertex list formed by the outer ring followed by
/// each hole ring in order. Every triangle is counter-clockwise.
std::vector<std::array<int, 3>> TriangulateIndexed(const PolygonWithHoles& poly);

using Triangle2 = std::array<Vec2, 3>;

/// Ear clipping after bridging every hole to the outer boundary. Throws
/// DegenerateRegion for regions with area below 1e-12.
std::vector<Triangle2> Triangulate(const PolygonWithHoles& poly);

}  // namespace cadseq
