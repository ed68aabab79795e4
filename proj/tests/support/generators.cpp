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

#include "generators.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cadseq::testing {

namespace {

constexpr double kPi = std::numbers::pi;

double Canon(double v) { return RoundToCanonical(v); }

}  // namespace

double Uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

int UniformInt(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Loop RandomPolygonLoop(Rng& rng, bool arcs, bool reverse, Vec2* center, double* inradius) {
  const int k = UniformInt(rng, 3, 7);
  const double radius = Uniform(rng, 0.2, 0.45);
  const double a0 = Uniform(rng, -kPi, kPi);
  // Angular gaps between consecutive vertices, each well below pi.
  std::vector<double> gaps(k);
  double total = 0;
  for (double& g : gaps) total += g = Uniform(rng, 1.0, 1.5);
  for (double& g : gaps) g *= 2 * kPi / total;
  const Vec2 c{-radius * std::cos(a0), -radius * std::sin(a0)};

  std::vector<Vec2> ring{{0, 0}};
  double a = a0;
  for (int i = 0; i + 1 < k; ++i) {
    a += gaps[i];
    ring.push_back({Canon(c.x + radius * std::cos(a)), Canon(c.y + radius * std::sin(a))});
  }
  const double widest = *std::max_element(gaps.begin(), gaps.end());
  if (center) *center = c;
  if (inradius) *inradius = radius * std::cos(widest / 2);
  if (reverse) std::reverse(ring.begin() + 1, ring.end());

  Loop loop;
  for (int i = 1; i <= k; ++i) {
    const Vec2 end = i < k ? ring[i] : Vec2{0, 0};
    if (arcs && UniformInt(rng, 0, 2) == 0) {
      loop.curves.push_back(Arc{end, Canon(Uniform(rng, 0.3, 1.0)), !reverse});
    } else {
      loop.curves.push_back(Line{end});
    }
  }
  return loop;
}

Loop CircleLoop(double cx, double cy, double r) {
  return Loop{{Circle{{Canon(cx), Canon(cy)}, Canon(r)}}};
}

Profile RandomProfile(Rng& rng, const SequenceGenOptions& options) {
  const int kind = UniformInt(rng, 0, 3);
  Profile p;
  if (kind == 0 || !options.circles) {
    p.loops.push_back(RandomPolygonLoop(rng, options.arcs, UniformInt(rng, 0, 1), nullptr, nullptr));
  } else if (kind == 1) {
    p.loops.push_back(CircleLoop(Uniform(rng, -0.5, 0.5), Uniform(rng, -0.5, 0.5),
                                 Uniform(rng, 0.05, 0.45)));
  } else if (kind == 2 && options.holes) {
    Vec2 c;
    double inr;
    p.loops.push_back(RandomPolygonLoop(rng, options.arcs, UniformInt(rng, 0, 1), &c, &inr));
    p.loops.push_back(CircleLoop(c.x, c.y, inr * Uniform(rng, 0.3, 0.8)));
  } else {
    const double cx = Uniform(rng, -0.5, 0.5), cy = Uniform(rng, -0.5, 0.5);
    const double r = Uniform(rng, 0.1, 0.45);
    p.loops.push_back(CircleLoop(cx, cy, r));
    if (options.holes) p.loops.push_back(CircleLoop(cx, cy, r * Uniform(rng, 0.2, 0.8)));
  }
  return p;
}

ExtrudeCommand RandomExtrude(Rng& rng, BooleanKind boolean) {
  ExtrudeCommand e;
  e.theta = Canon(Uniform(rng, -kPi, kPi));
  e.phi = Canon(Uniform(rng, -kPi, kPi));
  e.gamma = Canon(Uniform(rng, -kPi, kPi));
  e.origin = {Canon(Uniform(rng, -0.5, 0.5)), Canon(Uniform(rng, -0.5, 0.5)),
              Canon(Uniform(rng, -0.5, 0.5))};
  e.scale = Canon(Uniform(rng, 0.3, 1.5));
  e.extent_pos = Canon(Uniform(rng, 0.1, 1.0));
  e.extent_neg = Canon(Uniform(rng, 0.1, 1.0));
  e.boolean = boolean;
  e.extent = static_cast<ExtentKind>(UniformInt(rng, 0, 2));
  return e;
}

CadSequence RandomSequence(Rng& rng, const SequenceGenOptions& options) {
  CadSequence seq;
  const int steps = UniformInt(rng, options.min_steps, options.max_steps);
  for (int i = 0; i < steps; ++i) {
    const BooleanKind b =
        i == 0 ? BooleanKind::NewBody : static_cast<BooleanKind>(UniformInt(rng, 1, 3));
    seq.steps.push_back({RandomProfile(rng, options), RandomExtrude(rng, b)});
  }
  return seq;
}

Loop RectLoop(double a, double b) {
  return Loop{{Line{{a, 0}}, Line{{a, b}}, Line{{0, b}}, Line{{0, 0}}}};
}

SequenceStep PlanarStep(Profile profile, Vec3 origin, double height, BooleanKind b) {
  ExtrudeCommand e;
  e.origin = origin;
  e.scale = 1;
  e.extent_pos = height;
  e.boolean = b;
  return {std::move(profile), e};
}

TriMesh BoxMesh(Vec3 lo, Vec3 hi) {
  TriMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.push_back({(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y, (i & 4) ? hi.z : lo.z});
  }
  // Quads listed counter-clockwise from outside.
  const int quads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                           {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  for (const auto& q : quads) {
    m.faces.push_back({q[0], q[1], q[2]});
    m.faces.push_back({q[0], q[2], q[3]});
  }
  return m;
}

TriMesh RandomTriangleSoup(Rng& rng, int faces, double size) {
  TriMesh m;
  for (int f = 0; f < faces; ++f) {
    std::array<int, 3> idx;
    const bool share = f > 0 && UniformInt(rng, 0, 4) == 0;
    const Vec3 base{Uniform(rng, 0, 1), Uniform(rng, 0, 1), Uniform(rng, 0, 1)};
    for (int k = 0; k < 3; ++k) {
      if (share && k == 0) {
        idx[k] = UniformInt(rng, 0, static_cast<int>(m.vertices.size()) - 1);
        continue;
      }
      idx[k] = static_cast<int>(m.vertices.size());
      m.vertices.push_back(base + Vec3{Uniform(rng, -size, size), Uniform(rng, -size, size),
                                       Uniform(rng, -size, size)});
    }
    m.faces.push_back(idx);
  }
  return m;
}

TriMesh RandomGraphMesh(Rng& rng, int vertices, int faces) {
  TriMesh m;
  for (int i = 0; i < vertices; ++i) {
    m.vertices.push_back({Uniform(rng, 0, 1), Uniform(rng, 0, 1), Uniform(rng, 0, 1)});
  }
  for (int f = 0; f < faces; ++f) {
    const int a = UniformInt(rng, 0, vertices - 1);
    int b, c;
    do b = UniformInt(rng, 0, vertices - 1); while (b == a);
    do c = UniformInt(rng, 0, vertices - 1); while (c == a || c == b);
    m.faces.push_back({a, b, c});
  }
  return m;
}

PointCloud RandomCloud(Rng& rng, int n, double extent, bool grid_snap) {
  PointCloud pc;
  for (int i = 0; i < n; ++i) {
    Vec3 p{Uniform(rng, 0, extent), Uniform(rng, 0, extent), Uniform(rng, 0, extent)};
    if (grid_snap) p = {std::round(p.x * 8) / 8, std::round(p.y * 8) / 8, std::round(p.z * 8) / 8};
    pc.points.push_back(p);
    pc.normals.push_back(Normalized(Vec3{Uniform(rng, -1, 1), Uniform(rng, -1, 1), 1}));
  }
  return pc;
}

KdTree::Hit BruteNearest(Vec3 q, const std::vector<Vec3>& pts) {
  KdTree::Hit best;
  for (size_t i = 0; i < pts.size(); ++i) {
    const double d = SquaredDistance(q, pts[i]);
    if (best.index < 0 || d < best.squared_distance) best = {static_cast<int>(i), d};
  }
  return best;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string FixturePath(const std::string& name) {
  return std::string(CADSEQ_FIXTURE_DIR) + "/" + name;
}

std::vector<std::string> FixtureNames() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(CADSEQ_FIXTURE_DIR)) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace cadseq::testing
