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
#include <numbers>

#include "cadseq/error.h"
#include "cadseq/sketch2d.h"

namespace cadseq {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kMinSweep = 1e-9;
constexpr double kMinChord = 1e-12;
}  // namespace

std::vector<ChainedCurve> ChainLoop(const Loop& loop, double eps) {
  std::vector<ChainedCurve> out;
  if (loop.IsCircle()) {
    out.push_back({loop.curves[0], std::get<Circle>(loop.curves[0]).center});
    return out;
  }
  Vec2 cursor{0, 0};
  for (const CurveCommand& curve : loop.curves) {
    if (std::holds_alternative<Circle>(curve)) {
      throw CadError(ErrorCode::OpenLoop, "circle inside a curve chain");
    }
    out.push_back({curve, cursor});
    cursor = std::holds_alternative<Line>(curve) ? std::get<Line>(curve).end
                                                 : std::get<Arc>(curve).end;
  }
  if (out.empty() || Length(cursor) > eps) {
    throw CadError(ErrorCode::OpenLoop,
                   "loop ends at (" + std::to_string(cursor.x) + ", " +
                       std::to_string(cursor.y) + ")");
  }
  return out;
}

ArcGeometry ResolveArc(const Arc& arc, Vec2 start) {
  const Vec2 chord = arc.end - start;
  const double c = Length(chord);
  if (!(arc.alpha > kMinSweep) || arc.alpha >= kTwoPi || c <= kMinChord) {
    throw CadError(ErrorCode::DegenerateArc,
                   "sweep " + std::to_string(arc.alpha) + ", chord " +
                       std::to_string(c));
  }
  const double half = arc.alpha / 2;
  const double radius = c / (2 * std::sin(half));
  // Signed offset of the centre from the chord midpoint along the left normal;
  // negative once the sweep exceeds a half turn.
  const double offset = c / (2 * std::tan(half));
  const Vec2 left{-chord.y / c, chord.x / c};
  const Vec2 mid = (start + arc.end) * 0.5;
  const Vec2 center = mid + left * (arc.ccw ? offset : -offset);
  const Vec2 rel = start - center;
  return {center, radius, std::atan2(rel.y, rel.x),
          arc.ccw ? arc.alpha : -arc.alpha};
}

Polyline2 DiscretizeCurve(const CurveCommand& curve, Vec2 start, int n_arc) {
  n_arc = std::max(n_arc, 3);
  Polyline2 out;
  if (const auto* line = std::get_if<Line>(&curve)) {
    out.points = {start, line->end};
    return out;
  }
  if (const auto* circle = std::get_if<Circle>(&curve)) {
    if (!(circle->radius > 0)) {
      throw CadError(ErrorCode::DegenerateRegion, "circle radius must be positive");
    }
    out.closed = true;
    out.points.reserve(n_arc);
    for (int k = 0; k < n_arc; ++k) {
      const double a = kTwoPi * k / n_arc;
      out.points.push_back({circle->center.x + circle->radius * std::cos(a),
                            circle->center.y + circle->radius * std::sin(a)});
    }
    return out;
  }
  const Arc& arc = std::get<Arc>(curve);
  const ArcGeometry g = ResolveArc(arc, start);
  const int segments =
      std::max(1, static_cast<int>(std::ceil(n_arc * arc.alpha / kTwoPi - 1e-9)));
  out.points.reserve(segments + 1);
  out.points.push_back(start);
  for (int k = 1; k < segments; ++k) {
    const double a = g.start_angle + g.sweep * k / segments;
    out.points.push_back(
        {g.center.x + g.radius * std::cos(a), g.center.y + g.radius * std::sin(a)});
  }
  out.points.push_back(arc.end);
  return out;
}

Polyline2 DiscretizeLoop(const Loop& loop, int n_arc, double eps) {
  const auto chain = ChainLoop(loop, eps);
  if (loop.IsCircle()) return DiscretizeCurve(chain[0].curve, chain[0].start, n_arc);
  Polyline2 ring;
  ring.closed = true;
  for (const ChainedCurve& c : chain) {
    const Polyline2 piece = DiscretizeCurve(c.curve, c.start, n_arc);
    for (size_t i = 0; i + 1 < piece.points.size(); ++i) {
      const Vec2 p = piece.points[i];
      if (!ring.points.empty() && Length(p - ring.points.back()) <= 1e-12) continue;
      ring.points.push_back(p);
    }
  }
  while (ring.points.size() > 1 &&
         Length(ring.points.back() - ring.points.front()) <= 1e-12) {
    ring.points.pop_back();
  }
  return ring;
}

}  // namespace cadseq
