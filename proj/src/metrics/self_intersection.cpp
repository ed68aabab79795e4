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
#include <cmath>
#include <limits>
#include <numeric>

#include "cadseq/error.h"
#include "cadseq/topology.h"

namespace cadseq {

namespace {

using Tri = std::array<Vec3, 3>;

struct Interval {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void Add(double t) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
};

// Extent along `dir` of the part of triangle t lying on the plane from which
// its vertices have signed distances d (already snapped to zero within eps).
Interval PlaneSection(const Tri& t, const std::array<double, 3>& d, Vec3 dir) {
  Interval iv;
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0) iv.Add(Dot(t[i], dir));
    const int j = (i + 1) % 3;
    if ((d[i] < 0 && d[j] > 0) || (d[i] > 0 && d[j] < 0)) {
      const Vec3 p = t[i] + (t[j] - t[i]) * (d[i] / (d[i] - d[j]));
      iv.Add(Dot(p, dir));
    }
  }
  return iv;
}

// Sutherland-Hodgman clip of a convex counter-clockwise polygon by one edge.
std::vector<Vec2> ClipByEdge(const std::vector<Vec2>& poly, Vec2 a, Vec2 b) {
  std::vector<Vec2> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i], q = poly[(i + 1) % n];
    const double sp = Orient2d(a, b, p), sq = Orient2d(a, b, q);
    if (sp >= 0) out.push_back(p);
    if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
      out.push_back(p + (q - p) * (sp / (sp - sq)));
    }
  }
  return out;
}

bool CoplanarOverlap(const Tri& t1, const Tri& t2, Vec3 normal, double eps) {
  // Drop the dominant normal axis.
  const Vec3 an{std::abs(normal.x), std::abs(normal.y), std::abs(normal.z)};
  const int drop = an.x >= an.y && an.x >= an.z ? 0 : (an.y >= an.z ? 1 : 2);
  const int u = (drop + 1) % 3, v = (drop + 2) % 3;
  auto flat = [&](const Tri& t) {
    std::vector<Vec2> p{{t[0][u], t[0][v]}, {t[1][u], t[1][v]}, {t[2][u], t[2][v]}};
    if (Orient2d(p[0], p[1], p[2]) < 0) std::swap(p[1], p[2]);
    return p;
  };
  const std::vector<Vec2> a = flat(t1), b = flat(t2);
  std::vector<Vec2> clipped = a;
  for (int i = 0; i < 3 && clipped.size() >= 3; ++i) {
    clipped = ClipByEdge(clipped, b[i], b[(i + 1) % 3]);
  }
  if (clipped.size() < 3) return false;
  double area = 0;
  for (size_t i = 0; i < clipped.size(); ++i) {
    area += Cross(clipped[i], clipped[(i + 1) % clipped.size()]);
  }
  area = std::abs(area) / 2;
  double longest = 0;
  for (const auto* t : {&a, &b}) {
    for (int i = 0; i < 3; ++i) longest = std::max(longest, Length((*t)[i] - (*t)[(i + 1) % 3]));
  }
  // Projected area shrinks by |n_drop|; undo that before thresholding.
  return area / an[drop] > eps * longest;
}

std::array<double, 3> SignedDistances(const Tri& t, Vec3 unit_normal, Vec3 origin,
                                      double eps) {
  std::array<double, 3> d;
  for (int i = 0; i < 3; ++i) {
    d[i] = Dot(unit_normal, t[i] - origin);
    if (std::abs(d[i]) <= eps) d[i] = 0;
  }
  return d;
}

bool SameStrictSide(const std::array<double, 3>& d) {
  return (d[0] > 0 && d[1] > 0 && d[2] > 0) || (d[0] < 0 && d[1] < 0 && d[2] < 0);
}

bool AllZero(const std::array<double, 3>& d) {
  return d[0] == 0 && d[1] == 0 && d[2] == 0;
}

}  // namespace

bool TrianglesIntersect(const Tri& t1, const Tri& t2, double eps) {
  const Vec3 c1 = Cross(t1[1] - t1[0], t1[2] - t1[0]);
  const Vec3 c2 = Cross(t2[1] - t2[0], t2[2] - t2[0]);
  const double l1 = Length(c1), l2 = Length(c2);
  if (!(l1 > 0) || !(l2 > 0)) return false;
  const Vec3 n1 = c1 / l1, n2 = c2 / l2;

  const auto d2 = SignedDistances(t2, n1, t1[0], eps);
  if (SameStrictSide(d2)) return false;
  const auto d1 = SignedDistances(t1, n2, t2[0], eps);
  if (SameStrictSide(d1)) return false;

  const Vec3 line = Cross(n1, n2);
  const double line_len = Length(line);
  if (AllZero(d2) || AllZero(d1) || line_len < 1e-12) {
    if (!AllZero(d2) && !AllZero(d1)) return false;  // parallel, distinct planes
    return CoplanarOverlap(t1, t2, n1, eps);
  }
  const Vec3 dir = line / line_len;
  const Interval i1 = PlaneSection(t1, d1, dir);
  const Interval i2 = PlaneSection(t2, d2, dir);
  return std::min(i1.hi, i2.hi) - std::max(i1.lo, i2.lo) > eps;
}

namespace {

bool ShareVertex(const std::array<int, 3>& a, const std::array<int, 3>& b) {
  for (int x : a) {
    for (int y : b) {
      if (x == y) return true;
    }
  }
  return false;
}

// Bounding-volume hierarchy over padded face boxes.
class FaceBvh {
 public:
  FaceBvh(std::vector<Aabb> boxes) : boxes_(std::move(boxes)), order_(boxes_.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    if (!order_.empty()) Build(0, static_cast<int>(order_.size()));
  }

  template <typename Fn>
  void Query(const Aabb& box, Fn&& visit) const {
    if (nodes_.empty()) return;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const Node& node = nodes_[stack.back()];
      stack.pop_back();
      if (!node.box.Overlaps(box)) continue;
      if (node.left < 0) {
        for (int i = node.begin; i < node.end; ++i) {
          if (boxes_[order_[i]].Overlaps(box)) visit(order_[i]);
        }
        continue;
      }
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }

 private:
  struct Node {
    Aabb box;
    int begin, end;
    int left = -1, right = -1;
  };

  int Build(int begin, int end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({{}, begin, end});
    Aabb box, centers;
    for (int i = begin; i < end; ++i) {
      box.Extend(boxes_[order_[i]]);
      centers.Extend(boxes_[order_[i]].Center());
    }
    nodes_[id].box = box;
    if (end - begin <= 4) return id;
    const Vec3 size = centers.Size();
    const int axis = size.x >= size.y && size.x >= size.z ? 0 : (size.y >= size.z ? 1 : 2);
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) {
                       return std::pair(boxes_[a].Center()[axis], a) <
                              std::pair(boxes_[b].Center()[axis], b);
                     });
    const int left = Build(begin, mid);
    const int right = Build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  std::vector<Aabb> boxes_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

// Box padding well above the predicate tolerance, so pruning never rejects a
// pair the predicate would accept.
constexpr double kBoxPad = 1e-6;

}  // namespace

std::vector<std::uint8_t> SelfIntersectingFaces(const TriMesh& mesh, SearchMode mode) {
  const size_t nf = mesh.faces.size();
  std::vector<std::uint8_t> flags(nf, 0);
  auto test = [&](size_t i, size_t j) {
    if (ShareVertex(mesh.faces[i], mesh.faces[j])) return;
    if (TrianglesIntersect(mesh.Corners(i), mesh.Corners(j))) {
      flags[i] = 1;
      flags[j] = 1;
    }
  };
  if (mode == SearchMode::BruteForce) {
    for (size_t i = 0; i < nf; ++i) {
      for (size_t j = i + 1; j < nf; ++j) test(i, j);
    }
    return flags;
  }
  std::vector<Aabb> boxes(nf);
  for (size_t f = 0; f < nf; ++f) {
    for (const Vec3& p : mesh.Corners(f)) boxes[f].Extend(p);
    boxes[f].min = boxes[f].min - Vec3{kBoxPad, kBoxPad, kBoxPad};
    boxes[f].max = boxes[f].max + Vec3{kBoxPad, kBoxPad, kBoxPad};
  }
  const FaceBvh bvh(boxes);
  for (size_t i = 0; i < nf; ++i) {
    bvh.Query(boxes[i], [&](int j) {
      if (static_cast<size_t>(j) > i) test(i, j);
    });
  }
  return flags;
}

double SelfIntersectionRatio(const TriMesh& mesh, SearchMode mode) {
  if (mesh.faces.empty()) throw CadError(ErrorCode::EmptyMesh, "no faces");
  const auto flags = SelfIntersectingFaces(mesh, mode);
  const size_t hit = std::count(flags.begin(), flags.end(), std::uint8_t{1});
  return static_cast<double>(hit) / mesh.faces.size();
}

}  // namespace cadseq
