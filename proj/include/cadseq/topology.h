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
#include <cstdint>
#include <utility>
#include <vector>

#include "cadseq/mesh.h"

namespace cadseq {

struct HalfEdge {
  int tail;
  int head;
  int face;
  int twin = -1;  // opposite half-edge when the edge is manifold, else -1
};

struct EdgeIncidence {
  std::pair<int, int> edge;  // (min vertex, max vertex)
  int faces = 0;
};

/// Directed half-edges (three per face, in face order) plus the undirected
/// edge incidence table sorted by vertex pair.
class HalfEdgeIndex {
 public:
  /// Throws InvalidFaceIndex for out-of-range or repeated face indices.
  explicit HalfEdgeIndex(const TriMesh& mesh);

  const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
  const std::vector<EdgeIncidence>& edges() const { return edges_; }

  int Incidence(int a, int b) const;
  size_t DanglingCount() const;
  size_t NonManifoldCount() const;

 private:
  std::vector<HalfEdge> half_edges_;
  std::vector<EdgeIncidence> edges_;
};

/// Connected components of the vertex graph spanned by face edges; vertices
/// not referenced by any face are ignored.
int SegmentCount(const TriMesh& mesh);

/// |S(gen) - S(gt)| / S(gt). Throws EmptyGroundTruth when gt has no segment.
double SegmentError(const TriMesh& gt, const TriMesh& gen);

/// Total length of edges bounded by exactly one face.
double DanglingEdgeLength(const TriMesh& mesh);

/// Distance under which contacts do not count as intersections.
inline constexpr double kIntersectionEps = 1e-9;

/// True when the triangles share a region of positive size: a crossing
/// segment longer than `eps` or, for coplanar pairs, an overlap of positive
/// area.
bool TrianglesIntersect(const std::array<Vec3, 3>& t1,
                        const std::array<Vec3, 3>& t2,
                        double eps = kIntersectionEps);

enum class SearchMode { Accelerated, BruteForce };

/// Per-face flags: face intersects at least one face sharing no vertex with it.
std::vector<std::uint8_t> SelfIntersectingFaces(
    const TriMesh& mesh, SearchMode mode = SearchMode::Accelerated);

/// Fraction of faces flagged by SelfIntersectingFaces. Throws EmptyMesh.
double SelfIntersectionRatio(const TriMesh& mesh,
                             SearchMode mode = SearchMode::Accelerated);

/// |sum_i (n_x + n_y + n_z) dS_i|, the flux of the field (1, 1, 1) through
/// the triangles; zero for a closed consistently oriented surface.
double FluxEnclosureError(const TriMesh& mesh);

struct TopoReport {
  int segments = 0;       // S(gen)
  double seg_error = 0;   // SegE
  double dangel = 0;      // DangEL
  double sir_pct = 0;     // SIR in percent
  double fluxee_x100 = 0; // FluxEE scaled by 100
};

/// Metrics of `gen` against `gt`. An empty `gen` reports seg_error from
/// S(gen) = 0 and zero for the rest.
TopoReport MakeTopoReport(const TriMesh& gt, const TriMesh& gen,
                          SearchMode mode = SearchMode::Accelerated);

}  // namespace cadseq
