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

#include "cadseq/error.h"
#include "cadseq/sketch2d.h"

namespace cadseq {

double SignedArea(const std::vector<Vec2>& ring) {
  double twice = 0;
  for (size_t i = 0, n = ring.size(); i < n; ++i) {
    twice += Cross(ring[i], ring[(i + 1) % n]);
  }
  return twice / 2;
}

bool PointInRing(Vec2 p, const std::vector<Vec2>& ring) {
  bool inside = false;
  for (size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Vec2 a = ring[i], b = ring[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

namespace {

int Sign(double v) { return (v > 0) - (v < 0); }

bool OnSegment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection, touching included.
bool SegmentsTouch(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = Sign(Orient2d(a, b, c));
  const int o2 = Sign(Orient2d(a, b, d));
  const int o3 = Sign(Orient2d(c, d, a));
  const int o4 = Sign(Orient2d(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && OnSegment(a, b, c)) return true;
  if (o2 == 0 && OnSegment(a, b, d)) return true;
  if (o3 == 0 && OnSegment(c, d, a)) return true;
  if (o4 == 0 && OnSegment(c, d, b)) return true;
  return false;
}

struct Segment {
  Vec2 a, b;
  int ring, index;
  double xmin, xmax, ymin, ymax;
};

// Any crossing or touching between boundary segments, except between
// consecutive segments of the same ring.
void CheckCrossings(const std::vector<std::vector<Vec2>>& rings) {
  std::vector<Segment> segs;
  for (int r = 0; r < static_cast<int>(rings.size()); ++r) {
    const auto& ring = rings[r];
    for (int i = 0, n = static_cast<int>(ring.size()); i < n; ++i) {
      const Vec2 a = ring[i], b = ring[(i + 1) % n];
      segs.push_back({a, b, r, i, std::min(a.x, b.x), std::max(a.x, b.x),
                      std::min(a.y, b.y), std::max(a.y, b.y)});
    }
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment& s, const Segment& t) { return s.xmin < t.xmin; });
  for (size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    for (size_t j = i + 1; j < segs.size() && segs[j].xmin <= s.xmax; ++j) {
      const Segment& t = segs[j];
      if (t.ymin > s.ymax || s.ymin > t.ymax) continue;
      if (s.ring == t.ring) {
        const int n = static_cast<int>(rings[s.ring].size());
        const int gap = std::abs(s.index - t.index);
        if (gap == 1 || gap == n - 1) {
          // Neighbours share one endpoint; they only conflict when they
          // overlap collinearly.
          const Vec2 shared = (s.b == t.a) ? s.b : s.a;
          const Vec2 p = (s.a == shared) ? s.b : s.a;
          const Vec2 q = (t.a == shared) ? t.b : t.a;
          if (Orient2d(shared, p, q) == 0 && Dot(p - shared, q - shared) > 0) {
            throw CadError(ErrorCode::CrossingLoops,
                           "loop " + std::to_string(s.ring) + " folds back on itself");
          }
          continue;
        }
      }
      if (SegmentsTouch(s.a, s.b, t.a, t.b)) {
        throw CadError(ErrorCode::CrossingLoops,
                       "loops " + std::to_string(s.ring) + " and " +
                           std::to_string(t.ring) + " intersect");
      }
    }
  }
}

}  // namespace

std::vector<PolygonWithHoles> AssembleProfile(const Profile& profile, int n_arc,
                                              double eps) {
  std::vector<std::vector<Vec2>> rings;
  for (size_t i = 0; i < profile.loops.size(); ++i) {
    Polyline2 ring = DiscretizeLoop(profile.loops[i], n_arc, eps);
    if (ring.points.size() < 3) {
      throw CadError(ErrorCode::DegenerateRegion,
                     "loop " + std::to_string(i) + " encloses no area");
    }
    rings.push_back(std::move(ring.points));
  }
  if (rings.empty()) throw CadError(ErrorCode::DegenerateRegion, "profile has no loops");
  CheckCrossings(rings);
  for (size_t i = 0; i < rings.size(); ++i) {
    if (std::abs(SignedArea(rings[i])) <= 1e-12) {
      throw CadError(ErrorCode::DegenerateRegion,
                     "loop " + std::to_string(i) + " encloses no area");
    }
  }

  // Without crossings, containment of one vertex decides containment of the
  // whole ring.
  const int n = static_cast<int>(rings.size());
  std::vector<std::vector<int>> containers(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && PointInRing(rings[i][0], rings[j])) containers[i].push_back(j);
    }
  }
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    size_t best_depth = 0;
    for (int j : containers[i]) {
      if (parent[i] < 0 || containers[j].size() > best_depth) {
        parent[i] = j;
        best_depth = containers[j].size();
      }
    }
  }

  std::vector<PolygonWithHoles> out;
  std::vector<int> region_of(n, -1);
  for (int i = 0; i < n; ++i) {
    if (containers[i].size() % 2 != 0) continue;
    auto ring = rings[i];
    if (SignedArea(ring) < 0) std::reverse(ring.begin(), ring.end());
    region_of[i] = static_cast<int>(out.size());
    out.push_back({{std::move(ring), true}, {}});
  }
  for (int i = 0; i < n; ++i) {
    if (containers[i].size() % 2 == 0) continue;
    auto ring = rings[i];
    if (SignedArea(ring) > 0) std::reverse(ring.begin(), ring.end());
    out[region_of[parent[i]]].holes.push_back({std::move(ring), true});
  }
  return out;
}

PolygonWithHoles AssembleSingleRegion(const Profile& profile, int n_arc) {
  auto regions = AssembleProfile(profile, n_arc);
  if (regions.size() != 1) {
    throw CadError(ErrorCode::MultipleOuterLoops,
                   std::to_string(regions.size()) + " disjoint regions");
  }
  return std::move(regions[0]);
}

}  // namespace cadseq
