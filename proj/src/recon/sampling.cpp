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
#include <random>

#include "cadseq/error.h"
#include "cadseq/recon.h"

namespace cadseq {

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

PointCloud SampleSurface(const TriMesh& mesh, int n, std::uint64_t seed) {
  if (mesh.faces.empty()) throw CadError(ErrorCode::EmptyMesh, "no faces to sample");
  if (n < 1) throw CadError(ErrorCode::ValueOutOfRange, "sample count must be >= 1");
  std::vector<double> cdf(mesh.faces.size());
  double total = 0;
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    total += FaceArea(mesh, f);
    cdf[f] = total;
  }
  if (!(total > 0)) throw CadError(ErrorCode::EmptyMesh, "mesh has zero area");

  std::mt19937_64 rng(seed);
  PointCloud pc;
  pc.points.reserve(n);
  pc.normals.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double pick = Uniform01(rng) * total;
    size_t f = std::upper_bound(cdf.begin(), cdf.end(), pick) - cdf.begin();
    f = std::min(f, cdf.size() - 1);
    const double r1 = std::sqrt(Uniform01(rng));
    const double r2 = Uniform01(rng);
    const auto [a, b, c] = mesh.Corners(f);
    pc.points.push_back(a * (1 - r1) + b * (r1 * (1 - r2)) + c * (r1 * r2));
    pc.normals.push_back(FaceNormal(mesh, f));
  }
  return pc;
}

std::pair<PointCloud, PointCloud> NormalizePair(const PointCloud& gt,
                                                const PointCloud& gen) {
  Aabb box;
  for (const Vec3& p : gt.points) box.Extend(p);
  if (box.Empty() || !(box.MaxExtent() > 1e-12)) {
    throw CadError(ErrorCode::DegenerateBbox, "ground-truth cloud has no extent");
  }
  const double k = 1.0 / box.MaxExtent();
  const Vec3 c = box.Center();
  auto apply = [&](const PointCloud& in) {
    PointCloud out = in;
    for (Vec3& p : out.points) p = (p - c) * k;
    return out;
  };
  return {apply(gt), apply(gen)};
}

}  // namespace cadseq
