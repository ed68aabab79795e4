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

// Boolean operations on closed triangle meshes using BSP trees of convex
// polygons, followed by welding and T-junction removal so that the result is
// index-closed again.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "cadseq/error.h"
#include "cadseq/kernel.h"
#include "cadseq/topology.h"

namespace cadseq {

namespace {

constexpr double kPlaneEps = 1e-9;
constexpr double kWeldTol = 1e-9;
constexpr double kJunctionTol = 1e-8;
constexpr double kEmptyVolume = 1e-12;

struct Plane {
  Vec3 normal;
  double w = 0;

  void Flip() {
    normal = -normal;
    w = -w;
  }
};

struct Polygon {
  std::vector<Vec3> verts;
  Plane plane;

  void Flip() {
    std::reverse(verts.begin(), verts.end());
    plane.Flip();
  }
};

std::optional<Plane> PlaneThrough(Vec3 a, Vec3 b, Vec3 c) {
  const Vec3 n = Cross(b - a, c - a);
  const double len = Length(n);
  if (!(len > 0)) return std::nullopt;
  const Vec3 u = n / len;
  return Plane{u, Dot(u, a)};
}

enum Side : int { kCoplanar = 0, kFront = 1, kBack = 2, kSpanning = 3 };

void SplitPolygon(const Plane& plane, const Polygon& poly,
                  std::vector<Polygon>& coplanar_front,
                  std::vector<Polygon>& coplanar_back,
                  std::vector<Polygon>& front, std::vector<Polygon>& back) {
  const size_t n = poly.verts.size();
  int poly_side = 0;
  std::vector<int> sides(n);
  for (size_t i = 0; i < n; ++i) {
    const double t = Dot(plane.normal, poly.verts[i]) - plane.w;
    sides[i] = t < -kPlaneEps ? kBack : (t > kPlaneEps ? kFront : kCoplanar);
    poly_side |= sides[i];
  }
  switch (poly_side) {
    case kCoplanar:
      (Dot(plane.normal, poly.plane.normal) > 0 ? coplanar_front : coplanar_back)
          .push_back(poly);
      return;
    case kFront:
      front.push_back(poly);
      return;
    case kBack:
      back.push_back(poly);
      return;
    default:
      break;
  }
  Polygon f{{}, poly.plane}, b{{}, poly.plane};
  for (size_t i = 0; i < n; ++i) {
    const size_t j = (i + 1) % n;
    const int si = sides[i], sj = sides[j];
    const Vec3 vi = poly.verts[i], vj = poly.verts[j];
    if (si != kBack) f.verts.push_back(vi);
    if (si != kFront) b.verts.push_back(vi);
    if ((si | sj) == kSpanning) {
      const double t = (plane.w - Dot(plane.normal, vi)) / Dot(plane.normal, vj - vi);
      const Vec3 v = vi + (vj - vi) * t;
      f.verts.push_back(v);
      b.verts.push_back(v);
    }
  }
  if (f.verts.size() >= 3) front.push_back(std::move(f));
  if (b.verts.size() >= 3) back.push_back(std::move(b));
}

// Node pool; children are indices, -1 when absent.
class BspTree {
 public:
  explicit BspTree(std::vector<Polygon> polygons) {
    nodes_.push_back({});
    Build(0, std::move(polygons));
  }

  void Invert() {
    for (Node& node : nodes_) {
      for (Polygon& p : node.polygons) p.Flip();
      if (node.plane) node.plane->Flip();
      std::swap(node.front, node.back);
    }
  }

  // Parts of `polygons` outside this solid (in front of every leaf path).
  std::vector<Polygon> Clip(std::vector<Polygon> polygons) const {
    std::vector<Polygon> out;
    std::vector<std::pair<int, std::vector<Polygon>>> stack;
    stack.emplace_back(0, std::move(polygons));
    while (!stack.empty()) {
      auto [id, polys] = std::move(stack.back());
      stack.pop_back();
      const Node& node = nodes_[id];
      if (!node.plane) {
        out.insert(out.end(), std::make_move_iterator(polys.begin()),
                   std::make_move_iterator(polys.end()));
        continue;
      }
      std::vector<Polygon> front, back;
      for (const Polygon& p : polys) SplitPolygon(*node.plane, p, front, back, front, back);
      if (node.front >= 0) {
        stack.emplace_back(node.front, std::move(front));
      } else {
        out.insert(out.end(), std::make_move_iterator(front.begin()),
                   std::make_move_iterator(front.end()));
      }
      if (node.back >= 0) stack.emplace_back(node.back, std::move(back));
    }
    return out;
  }

  void ClipTo(const BspTree& other) {
    for (Node& node : nodes_) node.polygons = other.Clip(std::move(node.polygons));
  }

  std::vector<Polygon> AllPolygons() const {
    std::vector<Polygon> out;
    for (const Node& node : nodes_) {
      out.insert(out.end(), node.polygons.begin(), node.polygons.end());
    }
    return out;
  }

  void Add(std::vector<Polygon> polygons) { Build(0, std::move(polygons)); }

 private:
  struct Node {
    std::optional<Plane> plane;
    int front = -1;
    int back = -1;
    std::vector<Polygon> polygons;
  };

  void Build(int root, std::vector<Polygon> polygons) {
    std::vector<std::pair<int, std::vector<Polygon>>> stack;
    stack.emplace_back(root, std::move(polygons));
    while (!stack.empty()) {
      auto [id, polys] = std::move(stack.back());
      stack.pop_back();
      if (polys.empty()) continue;
      if (!nodes_[id].plane) nodes_[id].plane = polys[0].plane;
      const Plane plane = *nodes_[id].plane;
      std::vector<Polygon> front, back, here;
      for (const Polygon& p : polys) SplitPolygon(plane, p, here, here, front, back);
      auto& own = nodes_[id].polygons;
      own.insert(own.end(), std::make_move_iterator(here.begin()),
                 std::make_move_iterator(here.end()));
      if (!front.empty()) {
        if (nodes_[id].front < 0) {
          nodes_[id].front = static_cast<int>(nodes_.size());
          nodes_.push_back({});
        }
        stack.emplace_back(nodes_[id].front, std::move(front));
      }
      if (!back.empty()) {
        if (nodes_[id].back < 0) {
          nodes_[id].back = static_cast<int>(nodes_.size());
          nodes_.push_back({});
        }
        stack.emplace_back(nodes_[id].back, std::move(back));
      }
    }
  }

  std::vector<Node> nodes_;
};

std::vector<Polygon> ToPolygons(const TriMesh& m) {
  std::vector<Polygon> out;
  out.reserve(m.faces.size());
  for (size_t f = 0; f < m.faces.size(); ++f) {
    const auto [a, b, c] = m.Corners(f);
    if (auto plane = PlaneThrough(a, b, c)) out.push_back({{a, b, c}, *plane});
  }
  return out;
}

TriMesh FromPolygons(const std::vector<Polygon>& polys) {
  TriMesh m;
  for (const Polygon& p : polys) {
    const int base = static_cast<int>(m.vertices.size());
    m.vertices.insert(m.vertices.end(), p.verts.begin(), p.verts.end());
    for (size_t k = 1; k + 1 < p.verts.size(); ++k) {
      m.faces.push_back({base, base + static_cast<int>(k), base + static_cast<int>(k) + 1});
    }
  }
  return m;
}

// Drops triangles whose third vertex lies on the opposite edge (within tol);
// their neighbours are repaired by SplitTJunctions.
TriMesh DropSlivers(const TriMesh& m, double tol) {
  TriMesh out;
  out.vertices = m.vertices;
  for (size_t f = 0; f < m.faces.size(); ++f) {
    const auto [a, b, c] = m.Corners(f);
    const double twice_area = Length(Cross(b - a, c - a));
    const double longest =
        std::max({Distance(a, b), Distance(b, c), Distance(c, a)});
    if (longest > 0 && twice_area / longest > tol) out.faces.push_back(m.faces[f]);
  }
  return RemoveUnreferencedVertices(out);
}

// Splits faces along boundary edges that pass through another vertex, until
// no such edge remains.
TriMesh SplitTJunctions(TriMesh m, double tol) {
  std::vector<int> by_x(m.vertices.size());
  for (size_t i = 0; i < by_x.size(); ++i) by_x[i] = static_cast<int>(i);
  std::sort(by_x.begin(), by_x.end(), [&](int a, int b) {
    return std::pair(m.vertices[a].x, a) < std::pair(m.vertices[b].x, b);
  });

  // Vertex strictly inside segment (a, b), closest to a.
  auto find_on_edge = [&](int ia, int ib) -> int {
    const Vec3 a = m.vertices[ia], b = m.vertices[ib];
    const Vec3 d = b - a;
    const double len2 = Dot(d, d);
    const double len = std::sqrt(len2);
    if (len <= 2 * tol) return -1;
    const double lo = std::min(a.x, b.x) - tol, hi = std::max(a.x, b.x) + tol;
    auto it = std::lower_bound(by_x.begin(), by_x.end(), lo,
                               [&](int v, double x) { return m.vertices[v].x < x; });
    int best = -1;
    double best_t = 2;
    for (; it != by_x.end() && m.vertices[*it].x <= hi; ++it) {
      const int v = *it;
      if (v == ia || v == ib) continue;
      const Vec3 p = m.vertices[v];
      const double t = Dot(p - a, d) / len2;
      if (t * len <= tol || (1 - t) * len <= tol) continue;
      if (SquaredDistance(a + d * t, p) > tol * tol) continue;
      if (t < best_t) {
        best_t = t;
        best = v;
      }
    }
    return best;
  };

  for (int pass = 0; pass < 10000; ++pass) {
    std::map<std::pair<int, int>, int> count;
    for (const auto& f : m.faces) {
      for (int k = 0; k < 3; ++k) {
        const int a = f[k], b = f[(k + 1) % 3];
        ++count[{std::min(a, b), std::max(a, b)}];
      }
    }
    bool changed = false;
    std::vector<std::array<int, 3>> faces;
    faces.reserve(m.faces.size() + 16);
    for (const auto& f : m.faces) {
      bool split = false;
      for (int k = 0; k < 3 && !split; ++k) {
        const int a = f[k], b = f[(k + 1) % 3], c = f[(k + 2) % 3];
        if (count[{std::min(a, b), std::max(a, b)}] != 1) continue;
        const int p = find_on_edge(a, b);
        if (p < 0) continue;
        faces.push_back({a, p, c});
        faces.push_back({p, b, c});
        split = true;
      }
      if (split) {
        changed = true;
      } else {
        faces.push_back(f);
      }
    }
    m.faces = std::move(faces);
    if (!changed) break;
  }
  return m;
}

TriMesh Cleanup(const TriMesh& raw) {
  TriMesh m = WeldVertices(raw, kWeldTol);
  m = DropSlivers(m, kJunctionTol);
  m = SplitTJunctions(std::move(m), kJunctionTol);
  m = DropSlivers(m, kJunctionTol * 1e-3);
  if (std::abs(SignedVolume(m)) < kEmptyVolume) return {};
  return m;
}

void RequireClosed(const TriMesh& m, const char* which) {
  const double area = SurfaceArea(m);
  if (FluxEnclosureError(m) > 1e-9 * std::max(area, 1.0)) {
    throw CadError(ErrorCode::OpenInputMesh, std::string(which) + " operand is not closed");
  }
}

}  // namespace

TriMesh BooleanOp(const TriMesh& a, const TriMesh& b, BooleanKind op) {
  RequireClosed(a, "first");
  RequireClosed(b, "second");
  if (op == BooleanKind::NewBody) op = BooleanKind::Join;
  if (a.Empty() || b.Empty()) {
    switch (op) {
      case BooleanKind::Join: return a.Empty() ? b : a;
      case BooleanKind::Cut: return a;
      default: return {};
    }
  }
  if (!BoundingBox(a).Overlaps(BoundingBox(b), kPlaneEps)) {
    switch (op) {
      case BooleanKind::Join: return WeldVertices(Concatenate(a, b), kWeldTol);
      case BooleanKind::Cut: return a;
      default: return {};
    }
  }

  BspTree ta(ToPolygons(a));
  BspTree tb(ToPolygons(b));
  switch (op) {
    case BooleanKind::Join:
      ta.ClipTo(tb);
      tb.ClipTo(ta);
      tb.Invert();
      tb.ClipTo(ta);
      tb.Invert();
      ta.Add(tb.AllPolygons());
      break;
    case BooleanKind::Cut:
      ta.Invert();
      ta.ClipTo(tb);
      tb.ClipTo(ta);
      tb.Invert();
      tb.ClipTo(ta);
      tb.Invert();
      ta.Add(tb.AllPolygons());
      ta.Invert();
      break;
    case BooleanKind::Intersect:
      ta.Invert();
      tb.ClipTo(ta);
      tb.Invert();
      ta.ClipTo(tb);
      tb.ClipTo(ta);
      ta.Add(tb.AllPolygons());
      ta.Invert();
      break;
    default:
      break;
  }
  return Cleanup(FromPolygons(ta.AllPolygons()));
}

}  // namespace cadseq
