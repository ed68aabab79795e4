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
#include <utility>
#include <vector>

#include "cadseq/cmdseq.h"
#include "cadseq/mesh.h"
#include "cadseq/sketch2d.h"

namespace cadseq {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Placement of a sketch plane in world space.
struct PlaneFrame {
  Mat3 rotation;  // columns are the plane x axis, y axis and normal
  Vec3 origin;
  double scale = 1;

  Vec3 XAxis() const { return {rotation[0][0], rotation[1][0], rotation[2][0]}; }
  Vec3 YAxis() const { return {rotation[0][1], rotation[1][1], rotation[2][1]}; }
  Vec3 Normal() const { return {rotation[0][2], rotation[1][2], rotation[2][2]}; }

  /// origin + scale * (u * X + v * Y) + w * N. The offset along the normal is
  /// not scaled; extents are already in world units.
  Vec3 ToWorld(Vec2 p, double w = 0) const;
};

/// R = Rz(theta) * Ry(phi) * Rz(gamma). Throws NonPositiveScale.
PlaneFrame MakePlaneFrame(double theta, double phi, double gamma, Vec3 origin,
                          double scale);
PlaneFrame MakePlaneFrame(const ExtrudeCommand& cmd);

/// Interval [z0, z1] along the plane normal covered by an extrusion:
/// OneSided [0, e_p], TwoSided [-e_n, e_p], Symmetric [-e_p/2, e_p/2].
std::pair<double, double> ResolveExtent(double extent_pos, double extent_neg,
                                        ExtentKind kind);

/// Closed, outward-oriented prism(s) over the given regions. Disjoint regions
/// become disjoint components of one mesh. Throws EmptyExtent or
/// DegenerateRegion.
TriMesh ExtrudeProfile(const std::vector<PolygonWithHoles>& polys,
                       const PlaneFrame& frame, double extent_pos,
                       double extent_neg, ExtentKind kind);

/// CSG of two closed outward-oriented meshes via BSP trees. Join = union,
/// Intersect = intersection, Cut = a minus b (NewBody behaves as Join). The
/// result is welded, free of T-junctions, and empty when its volume falls
/// below 1e-12. Throws OpenInputMesh.
TriMesh BooleanOp(const TriMesh& a, const TriMesh& b, BooleanKind op);

/// Left fold of the extrusions with their boolean kinds. Errors from any step
/// carry the 1-based step index; throws EmptyResult for a final mesh without
/// faces.
TriMesh ExecuteSequence(const CadSequence& seq, int n_arc = kDefaultArcSegments);

/// Every intermediate solid of the fold; element i is the solid after step
/// i + 1 (possibly empty).
std::vector<TriMesh> ExecuteSequenceSteps(const CadSequence& seq,
                                          int n_arc = kDefaultArcSegments);

/// The extrusion solid of a single step, before it is combined.
TriMesh ExtrudeStep(const SequenceStep& step, int n_arc = kDefaultArcSegments);

}  // namespace cadseq
