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

#include <cmath>

#include "cadseq/error.h"
#include "cadseq/kernel.h"

namespace cadseq {

namespace {

Mat3 Multiply(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

Mat3 RotZ(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}

Mat3 RotY(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
}

}  // namespace

Vec3 PlaneFrame::ToWorld(Vec2 p, double w) const {
  return origin + scale * (p.x * XAxis() + p.y * YAxis()) + w * Normal();
}

PlaneFrame MakePlaneFrame(double theta, double phi, double gamma, Vec3 origin,
                          double scale) {
  if (!(scale > 0)) {
    throw CadError(ErrorCode::NonPositiveScale, "scale " + std::to_string(scale));
  }
  return {Multiply(Multiply(RotZ(theta), RotY(phi)), RotZ(gamma)), origin, scale};
}

PlaneFrame MakePlaneFrame(const ExtrudeCommand& cmd) {
  return MakePlaneFrame(cmd.theta, cmd.phi, cmd.gamma, cmd.origin, cmd.scale);
}

std::pair<double, double> ResolveExtent(double extent_pos, double extent_neg,
                                        ExtentKind kind) {
  switch (kind) {
    case ExtentKind::OneSided: return {0.0, extent_pos};
    case ExtentKind::TwoSided: return {-extent_neg, extent_pos};
    case ExtentKind::Symmetric: return {-extent_pos / 2, extent_pos / 2};
  }
  return {0.0, extent_pos};
}

TriMesh ExtrudeProfile(const std::vector<PolygonWithHoles>& polys,
                       const PlaneFrame& frame, double extent_pos,
                       double extent_neg, ExtentKind kind) {
  const auto [z0, z1] = ResolveExtent(extent_pos, extent_neg, kind);
  if (!(z1 > z0) || !std::isfinite(z1 - z0)) {
    throw CadError(ErrorCode::EmptyExtent,
                   "interval [" + std::to_string(z0) + ", " + std::to_string(z1) + "]");
  }
  TriMesh mesh;
  for (const PolygonWithHoles& poly : polys) {
    double area = SignedArea(poly.outer.points);
    for (const auto& h : poly.holes) area += SignedArea(h.points);
    if (!(area > 1e-12)) {
      throw CadError(ErrorCode::DegenerateRegion, "region area " + std::to_string(area));
    }
    const auto tris = TriangulateIndexed(poly);
    std::vector<const Polyline2*> rings{&poly.outer};
    for (const auto& h : poly.holes) rings.push_back(&h);

    const int base = static_cast<int>(mesh.vertices.size());
    int n = 0;
    for (const Polyline2* r : rings) n += static_cast<int>(r->points.size());
    mesh.vertices.resize(base + 2 * n);
    int offset = 0;
    for (const Polyline2* r : rings) {
      for (const Vec2& p : r->points) {
        mesh.vertices[base + offset] = frame.ToWorld(p, z0);
        mesh.vertices[base + n + offset] = frame.ToWorld(p, z1);
        ++offset;
      }
    }
    for (const auto& t : tris) {
      mesh.faces.push_back({base + n + t[0], base + n + t[1], base + n + t[2]});
      mesh.faces.push_back({base + t[2], base + t[1], base + t[0]});
    }
    offset = 0;
    for (const Polyline2* r : rings) {
      const int m = static_cast<int>(r->points.size());
      for (int i = 0; i < m; ++i) {
        const int a = base + offset + i;
        const int b = base + offset + (i + 1) % m;
        mesh.faces.push_back({a, b, b + n});
        mesh.faces.push_back({a, b + n, a + n});
      }
      offset += m;
    }
  }
  return mesh;
}

}  // namespace cadseq
