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
#include <list>

#include "cadseq/error.h"
#include "cadseq/sketch2d.h"

namespace cadseq {

namespace {

bool InTriangleClosed(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
  return Orient2d(a, b, p) >= 0 && Orient2d(b, c, p) >= 0 &&
         Orient2d(c, a, p) >= 0;
}

// True when the direction from ring vertex `a` towards `b` starts inside the
// polygon (counter-clockwise ring).
bool LocallyInside(Vec2 prev, Vec2 a, Vec2 next, Vec2 b) {
  if (Orient2d(prev, a, next) > 0) {
    return Orient2d(a, next, b) >= 0 && Orient2d(a, b, prev) >= 0;
  }
  return Orient2d(a, next, b) >= 0 || Orient2d(a, b, prev) >= 0;
}

// Merges a hole into the boundary `ring` (indices into `pts`) by a bridge from
// the hole's rightmost vertex to a mutually visible boundary vertex.
void BridgeHole(std::vector<int>& ring, const std::vector<int>& hole,
                const std::vector<Vec2>& pts) {
  size_t mi = 0;
  for (size_t i = 1; i < hole.size(); ++i) {
    const Vec2 p = pts[hole[i]], q = pts[hole[mi]];
    if (p.x > q.x || (p.x == q.x && p.y < q.y)) mi = i;
  }
  const Vec2 h = pts[hole[mi]];
  const size_t n = ring.size();
  auto at = [&](size_t i) { return pts[ring[i % n]]; };

  // Nearest upward boundary edge crossed by the ray h + t (1, 0).
  double qx = std::numeric_limits<double>::infinity();
  long cand = -1;
  bool touching = false;
  for (size_t i = 0; i < n && !touching; ++i) {
    const Vec2 a = at(i), b = at(i + 1);
    if (!(a.y <= h.y && h.y <= b.y && a.y != b.y)) continue;
    const double x = a.x + (h.y - a.y) * (b.x - a.x) / (b.y - a.y);
    if (x >= h.x && x < qx) {
      qx = x;
      cand = static_cast<long>(a.x > b.x ? i : (i + 1) % n);
      touching = x == h.x;
    }
  }
  if (cand < 0) {
    throw CadError(ErrorCode::DegenerateRegion, "hole lies outside its boundary");
  }

  if (!touching) {
    // A vertex inside triangle (h, hit, cand) would hide cand from h; the one
    // with the smallest angle to the ray is visible.
    const Vec2 m = at(cand);
    const Vec2 hit{qx, h.y};
    Vec2 t0 = h, t1 = hit, t2 = m;
    if (Orient2d(t0, t1, t2) < 0) std::swap(t1, t2);
    double tan_min = std::numeric_limits<double>::infinity();
    Vec2 best = m;
    for (size_t i = 0; i < n; ++i) {
      const Vec2 p = at(i);
      if (!(h.x <= p.x && p.x <= m.x && p.x != h.x)) continue;
      if (!InTriangleClosed(p, t0, t1, t2)) continue;
      const double tan = std::abs(h.y - p.y) / (p.x - h.x);
      if (!LocallyInside(at(i + n - 1), p, at(i + 1), h)) continue;
      if (tan < tan_min || (tan == tan_min && p.x < best.x)) {
        cand = static_cast<long>(i);
        best = p;
        tan_min = tan;
      }
    }
  }

  std::vector<int> merged;
  merged.reserve(n + hole.size() + 2);
  merged.insert(merged.end(), ring.begin(), ring.begin() + cand + 1);
  for (size_t k = 0; k <= hole.size(); ++k) {
    merged.push_back(hole[(mi + k) % hole.size()]);
  }
  merged.insert(merged.end(), ring.begin() + cand, ring.end());
  ring = std::move(merged);
}

// Ear clipping of a weakly simple counter-clockwise ring. Vertices coinciding
// with an ear corner (bridge duplicates) never block it; every other vertex
// blocks when inside or on the ear.
std::vector<std::array<int, 3>> ClipEars(std::vector<int> ring,
                                         const std::vector<Vec2>& pts) {
  std::vector<std::array<int, 3>> tris;
  std::list<int> poly(ring.begin(), ring.end());
  auto next_of = [&](std::list<int>::iterator it) {
    return ++it == poly.end() ? poly.begin() : it;
  };
  auto prev_of = [&](std::list<int>::iterator it) {
    return it == poly.begin() ? std::prev(poly.end()) : std::prev(it);
  };
  auto is_ear = [&](std::list<int>::iterator it) {
    const int ia = *prev_of(it), ib = *it, ic = *next_of(it);
    const Vec2 a = pts[ia], b = pts[ib], c = pts[ic];
    if (Orient2d(a, b, c) <= 0) return false;
    for (int v : poly) {
      const Vec2 p = pts[v];
      if (p == a || p == b || p == c) continue;
      if (InTriangleClosed(p, a, b, c)) return false;
    }
    return true;
  };

  auto it = poly.begin();
  size_t misses = 0;
  while (poly.size() > 3) {
    if (is_ear(it)) {
      tris.push_back({*prev_of(it), *it, *next_of(it)});
      auto nxt = next_of(it);
      poly.erase(it);
      it = nxt;
      misses = 0;
      continue;
    }
    it = next_of(it);
    if (++misses < poly.size()) continue;
    // No clean ear left (round-off on nearly degenerate input): clip the most
    // convex corner.
    auto best = poly.end();
    double best_area = 0;
    for (auto jt = poly.begin(); jt != poly.end(); ++jt) {
      const double area = Orient2d(pts[*prev_of(jt)], pts[*jt], pts[*next_of(jt)]);
      if (area > best_area) {
        best_area = area;
        best = jt;
      }
    }
    if (best == poly.end()) return tris;  // remaining ring has no area
    tris.push_back({*prev_of(best), *best, *next_of(best)});
    it = next_of(best);
    poly.erase(best);
    misses = 0;
  }
  auto a = poly.begin();
  const int ia = *a, ib = *std::next(a), ic = *std::next(a, 2);
  if (Orient2d(pts[ia], pts[ib], pts[ic]) > 0) tris.push_back({ia, ib, ic});
  return tris;
}

}  // namespace

std::vector<std::array<int, 3>> TriangulateIndexed(const PolygonWithHoles& poly) {
  std::vector<Vec2> pts = poly.outer.points;
  std::vector<int> ring(pts.size());
  for (size_t i = 0; i < ring.size(); ++i) ring[i] = static_cast<int>(i);

  std::vector<std::vector<int>> holes;
  for (const Polyline2& h : poly.holes) {
    std::vector<int> idx;
    for (const Vec2& p : h.points) {
      idx.push_back(static_cast<int>(pts.size()));
      pts.push_back(p);
    }
    holes.push_back(std::move(idx));
  }
  auto max_x = [&](const std::vector<int>& h) {
    double x = -std::numeric_limits<double>::infinity();
    for (int i : h) x = std::max(x, pts[i].x);
    return x;
  };
  std::stable_sort(holes.begin(), holes.end(),
                   [&](const auto& a, const auto& b) { return max_x(a) > max_x(b); });
  for (const auto& h : holes) BridgeHole(ring, h, pts);
  return ClipEars(std::move(ring), pts);
}

std::vector<Triangle2> Triangulate(const PolygonWithHoles& poly) {
  double area = SignedArea(poly.outer.points);
  for (const auto& h : poly.holes) area += SignedArea(h.points);
  if (poly.outer.points.size() < 3 || area < 1e-12) {
    throw CadError(ErrorCode::DegenerateRegion,
                   "region area " + std::to_string(area));
  }
  std::vector<Vec2> pts = poly.outer.points;
  for (const auto& h : poly.holes) pts.insert(pts.end(), h.points.begin(), h.points.end());
  std::vector<Triangle2> out;
  for (const auto& t : TriangulateIndexed(poly)) {
    out.push_back({pts[t[0]], pts[t[1]], pts[t[2]]});
  }
  return out;
}

}  // namespace cadseq
