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
#include "cadseq/recon.h"

namespace cadseq {

namespace {

void RequireNonEmpty(const PointCloud& p, const PointCloud& q) {
  if (p.points.empty() || q.points.empty()) {
    throw CadError(ErrorCode::EmptyCloud, "point cloud is empty");
  }
}

double MeanDistance(const PointCloud& from, const PointCloud& to,
                    ChamferVariant variant, SearchMode mode) {
  CompensatedSum sum;
  for (const KdTree::Hit& hit : NearestNeighbors(from.points, to.points, mode)) {
    sum.Add(variant == ChamferVariant::SquaredL2 ? hit.squared_distance
                                                 : std::sqrt(hit.squared_distance));
  }
  return sum.Value() / from.size();
}

double FractionWithin(const PointCloud& from, const PointCloud& to, double tau,
                      SearchMode mode) {
  size_t count = 0;
  for (const KdTree::Hit& hit : NearestNeighbors(from.points, to.points, mode)) {
    if (std::sqrt(hit.squared_distance) < tau) ++count;
  }
  return static_cast<double>(count) / from.size();
}

double MeanCosine(const PointCloud& from, const PointCloud& to, NormalMode normal_mode,
                  SearchMode mode) {
  const auto hits = NearestNeighbors(from.points, to.points, mode);
  CompensatedSum sum;
  for (size_t i = 0; i < hits.size(); ++i) {
    const double c = Dot(from.normals[i], to.normals[hits[i].index]);
    sum.Add(normal_mode == NormalMode::Absolute ? std::abs(c) : c);
  }
  return sum.Value() / from.size();
}

}  // namespace

double ChamferDistance(const PointCloud& p, const PointCloud& q, ChamferVariant variant,
                       SearchMode mode) {
  RequireNonEmpty(p, q);
  return 0.5 * (MeanDistance(p, q, variant, mode) + MeanDistance(q, p, variant, mode));
}

double HarmonicF(double precision, double recall) {
  if (precision + recall == 0) return 0;
  return 2 * precision * recall / (precision + recall);
}

FScoreResult FScore(const PointCloud& gt, const PointCloud& gen, double tau,
                    SearchMode mode) {
  RequireNonEmpty(gt, gen);
  FScoreResult r;
  r.precision = FractionWithin(gen, gt, tau, mode);
  r.recall = FractionWithin(gt, gen, tau, mode);
  r.f = HarmonicF(r.precision, r.recall);
  return r;
}

double NormalConsistency(const PointCloud& p, const PointCloud& q, NormalMode normal_mode,
                         SearchMode mode) {
  if (!p.HasNormals() || !q.HasNormals()) {
    throw CadError(ErrorCode::MissingNormals, "both clouds need per-point normals");
  }
  RequireNonEmpty(p, q);
  return 0.5 * (MeanCosine(p, q, normal_mode, mode) + MeanCosine(q, p, normal_mode, mode));
}

}  // namespace cadseq
