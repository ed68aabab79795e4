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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cadseq/mesh.h"
#include "cadseq/topology.h"

namespace cadseq {

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;  // unit length; same size as points, or empty

  size_t size() const { return points.size(); }
  bool HasNormals() const { return !normals.empty() && normals.size() == points.size(); }
  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

inline constexpr int kDefaultSamplePoints = 8192;
inline constexpr double kDefaultFScoreTau = 0.05;

/// Area-weighted uniform samples; each point carries the normal of the face it
/// was drawn from. Pure function of (mesh, n, seed). Throws EmptyMesh.
PointCloud SampleSurface(const TriMesh& mesh, int n, std::uint64_t seed);

/// Maps `gt` into [-0.5, 0.5]^3 (centred, maximum extent 1) and applies the
/// same similarity transform to `gen`. Throws DegenerateBbox.
std::pair<PointCloud, PointCloud> NormalizePair(const PointCloud& gt,
                                                const PointCloud& gen);

/// Exact nearest-neighbour queries over a fixed point set. Ties resolve to the
/// lowest index, matching a linear scan.
class KdTree {
 public:
  explicit KdTree(std::vector<Vec3> points);

  struct Hit {
    int index = -1;
    double squared_distance = 0;
  };
  Hit Nearest(Vec3 query) const;

 private:
  struct Node {
    int begin, end;  // range into order_
    int split_axis = -1;
    double split = 0;
    int left = -1, right = -1;
  };
  int Build(int begin, int end, int depth);
  void Search(int node, Vec3 q, Hit& best) const;

  std::vector<Vec3> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

/// Nearest neighbour of every point of `queries` in `targets`.
std::vector<KdTree::Hit> NearestNeighbors(const std::vector<Vec3>& queries,
                                          const std::vector<Vec3>& targets,
                                          SearchMode mode);

enum class ChamferVariant { L2, SquaredL2 };
enum class NormalMode { Absolute, Signed };

/// 0.5 * (mean_p min_q d + mean_q min_p d); d squared for SquaredL2.
/// Throws EmptyCloud.
double ChamferDistance(const PointCloud& p, const PointCloud& q,
                       ChamferVariant variant = ChamferVariant::L2,
                       SearchMode mode = SearchMode::Accelerated);

struct FScoreResult {
  double precision = 0;
  double recall = 0;
  double f = 0;
};

/// Precision: generated points within tau of gt; recall: gt points within tau
/// of generated. Throws EmptyCloud.
FScoreResult FScore(const PointCloud& gt, const PointCloud& gen,
                    double tau = kDefaultFScoreTau,
                    SearchMode mode = SearchMode::Accelerated);

/// Harmonic mean of precision and recall; 0 when both are 0.
double HarmonicF(double precision, double recall);

/// Mean (absolute) cosine between each point's normal and its nearest
/// neighbour's normal, averaged over both directions. Throws MissingNormals.
double NormalConsistency(const PointCloud& p, const PointCloud& q,
                         NormalMode normal_mode = NormalMode::Absolute,
                         SearchMode mode = SearchMode::Accelerated);

/// Binary little-endian PLY with float x y z nx ny nz.
void WritePly(std::ostream& out, const PointCloud& pc);
PointCloud ReadPly(std::istream& in);
/// Whitespace text, one point per line: x y z [nx ny nz].
void WriteXyz(std::ostream& out, const PointCloud& pc);
PointCloud ReadXyz(std::istream& in);

/// Dispatches on extension (.ply or anything else as text).
void SavePointCloud(const std::string& path, const PointCloud& pc);
PointCloud LoadPointCloud(const std::string& path);

}  // namespace cadseq
