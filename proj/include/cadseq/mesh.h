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
#include <iosfwd>
#include <string>
#include <vector>

#include "cadseq/geometry.h"

namespace cadseq {

/// Indexed triangle mesh. Faces wind counter-clockwise when seen from outside.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;

  bool Empty() const { return faces.empty(); }
  std::array<Vec3, 3> Corners(size_t face) const {
    const auto& f = faces[face];
    return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
  }
};

/// (v1 - v0) x (v2 - v0): twice the area times the unit normal.
Vec3 FaceAreaVector(const TriMesh& m, size_t face);
double FaceArea(const TriMesh& m, size_t face);
Vec3 FaceNormal(const TriMesh& m, size_t face);
double SurfaceArea(const TriMesh& m);

/// Sum over faces of v0 . (v1 x v2) / 6.
double SignedVolume(const TriMesh& m);

/// Throws EmptyMesh for a mesh without faces.
Aabb BoundingBox(const TriMesh& m);

/// Returns a message per broken invariant (index range, finiteness, face area
/// above `min_area`).
std::vector<std::string> CheckMeshInvariants(const TriMesh& m,
                                             double min_area = 1e-12);

/// Merges vertices closer than `tol` (first index wins), drops faces that
/// collapse onto repeated indices and compacts unreferenced vertices.
TriMesh WeldVertices(const TriMesh& m, double tol = 1e-9);

TriMesh RemoveUnreferencedVertices(const TriMesh& m);
TriMesh FlipFaces(const TriMesh& m);
TriMesh Concatenate(const TriMesh& a, const TriMesh& b);
TriMesh Transformed(const TriMesh& m, double scale, Vec3 translation);

/// OBJ: `v x y z` with 9 significant digits and 1-based `f a b c` lines.
void WriteObj(std::ostream& out, const TriMesh& m);
std::string ObjString(const TriMesh& m);
void SaveObj(const std::string& path, const TriMesh& m);

/// Reads `v` and `f` records, ignoring texture/normal references and other
/// record types; polygons are fan-triangulated. Throws ParseError.
TriMesh ReadObj(std::istream& in);
TriMesh LoadObj(const std::string& path);

}  // namespace cadseq
