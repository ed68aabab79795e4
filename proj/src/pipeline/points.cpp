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
#include <numeric>
#include <random>

#include "cadseq/error.h"
#include "cadseq/kernel.h"
#include "cadseq/pipeline.h"
#include "random_util.h"

namespace cadseq {

PointCloud ExportPointCloud(const CadSequence& seq, int n, std::uint64_t seed, int n_arc) {
  return SampleSurface(ExecuteSequence(seq, n_arc), n, seed);
}

PointCloud PerturbPoints(const PointCloud& pc, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0)) throw CadError(ErrorCode::NegativeSigma, "sigma must be >= 0");
  PointCloud out = pc;
  if (sigma == 0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (Vec3& p : out.points) {
    p.x += noise(rng);
    p.y += noise(rng);
    p.z += noise(rng);
  }
  return out;
}

size_t KeptPointCount(size_t n, double fraction_removed) {
  const double exact = (1.0 - fraction_removed) * static_cast<double>(n);
  const double kept = std::ceil(exact - 1e-9 * std::max(1.0, exact));
  return std::min(n, static_cast<size_t>(std::max(0.0, kept)));
}

PointCloud DecimatePoints(const PointCloud& pc, double fraction_removed, std::uint64_t seed) {
  if (!(fraction_removed >= 0 && fraction_removed < 1)) {
    throw CadError(ErrorCode::FractionOutOfRange, "fraction removed must lie in [0, 1)");
  }
  const size_t keep = KeptPointCount(pc.size(), fraction_removed);
  std::vector<size_t> index(pc.size());
  std::iota(index.begin(), index.end(), 0);
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < keep; ++i) {
    std::swap(index[i], index[i + internal::UniformBelow(rng, index.size() - i)]);
  }
  index.resize(keep);
  std::sort(index.begin(), index.end());
  PointCloud out;
  for (size_t i : index) {
    out.points.push_back(pc.points[i]);
    if (pc.HasNormals()) out.normals.push_back(pc.normals[i]);
  }
  return out;
}

std::vector<CameraPose> CameraPoses() {
  const double c = kCameraRadius / std::sqrt(3.0);
  std::vector<CameraPose> poses;
  for (int i = 0; i < 8; ++i) {
    CameraPose pose;
    pose.id = "view" + std::to_string(i);
    pose.position = {(i & 1) ? c : -c, (i & 2) ? c : -c, (i & 4) ? c : -c};
    pose.look_at = {0, 0, 0};
    pose.up = {0, 0, 1};
    poses.push_back(pose);
  }
  return poses;
}

}  // namespace cadseq
