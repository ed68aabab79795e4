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

#include <algorithm>
#include <numeric>

#include "cadseq/error.h"
#include "cadseq/topology.h"

namespace cadseq {

HalfEdgeIndex::HalfEdgeIndex(const TriMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  half_edges_.reserve(mesh.faces.size() * 3);
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      if (face[k] < 0 || face[k] >= nv) {
        throw CadError(ErrorCode::InvalidFaceIndex,
                       "face " + std::to_string(f) + " references vertex " +
                           std::to_string(face[k]));
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw CadError(ErrorCode::InvalidFaceIndex,
                     "face " + std::to_string(f) + " repeats a vertex");
    }
    for (int k = 0; k < 3; ++k) {
      half_edges_.push_back({face[k], face[(k + 1) % 3], static_cast<int>(f)});
    }
  }

  // Group half-edges by undirected edge.
  std::vector<int> order(half_edges_.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int h) {
    const HalfEdge& e = half_edges_[h];
    return std::pair(std::min(e.tail, e.head), std::max(e.tail, e.head));
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(key(a), a) < std::pair(key(b), b);
  });
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && key(order[j]) == key(order[i])) ++j;
    edges_.push_back({key(order[i]), static_cast<int>(j - i)});
    if (j - i == 2) {
      HalfEdge& a = half_edges_[order[i]];
      HalfEdge& b = half_edges_[order[i + 1]];
      if (a.tail == b.head) {
        a.twin = order[i + 1];
        b.twin = order[i];
      }
    }
    i = j;
  }
}

int HalfEdgeIndex::Incidence(int a, int b) const {
  const std::pair<int, int> k(std::min(a, b), std::max(a, b));
  auto it = std::lower_bound(edges_.begin(), edges_.end(), k,
                             [](const EdgeIncidence& e, const auto& key) { return e.edge < key; });
  return it != edges_.end() && it->edge == k ? it->faces : 0;
}

size_t HalfEdgeIndex::DanglingCount() const {
  return std::count_if(edges_.begin(), edges_.end(),
                       [](const EdgeIncidence& e) { return e.faces == 1; });
}

size_t HalfEdgeIndex::NonManifoldCount() const {
  return std::count_if(edges_.begin(), edges_.end(),
                       [](const EdgeIncidence& e) { return e.faces >= 3; });
}

double DanglingEdgeLength(const TriMesh& mesh) {
  const HalfEdgeIndex index(mesh);
  CompensatedSum sum;
  for (const EdgeIncidence& e : index.edges()) {
    if (e.faces != 1) continue;
    sum.Add(Distance(mesh.vertices[e.edge.first], mesh.vertices[e.edge.second]));
  }
  return sum.Value();
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Unite(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

int SegmentCount(const TriMesh& mesh) {
  const size_t nv = mesh.vertices.size();
  UnionFind uf(nv);
  std::vector<char> used(nv, 0);
  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      if (f[k] < 0 || static_cast<size_t>(f[k]) >= nv) {
        throw CadError(ErrorCode::InvalidFaceIndex, "face index out of range");
      }
      used[f[k]] = 1;
    }
    uf.Unite(f[0], f[1]);
    uf.Unite(f[1], f[2]);
  }
  int count = 0;
  for (size_t v = 0; v < nv; ++v) {
    if (used[v] && uf.Find(static_cast<int>(v)) == static_cast<int>(v)) ++count;
  }
  return count;
}

double SegmentError(const TriMesh& gt, const TriMesh& gen) {
  const int s_gt = SegmentCount(gt);
  if (s_gt == 0) throw CadError(ErrorCode::EmptyGroundTruth, "ground truth has no segments");
  return std::abs(SegmentCount(gen) - s_gt) / static_cast<double>(s_gt);
}

double FluxEnclosureError(const TriMesh& mesh) {
  CompensatedSum flux;
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    // (n_x + n_y + n_z) dS with n = c / |c| and dS = |c| / 2.
    const Vec3 c = FaceAreaVector(mesh, f);
    flux.Add(0.5 * c.x);
    flux.Add(0.5 * c.y);
    flux.Add(0.5 * c.z);
  }
  return std::abs(flux.Value());
}

TopoReport MakeTopoReport(const TriMesh& gt, const TriMesh& gen, SearchMode mode) {
  TopoReport r;
  r.seg_error = SegmentError(gt, gen);
  r.segments = SegmentCount(gen);
  if (gen.Empty()) return r;
  r.dangel = DanglingEdgeLength(gen);
  r.sir_pct = 100 * SelfIntersectionRatio(gen, mode);
  r.fluxee_x100 = 100 * FluxEnclosureError(gen);
  return r;
}

}  // namespace cadseq
