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
#include <numeric>

#include "cadseq/recon.h"

namespace cadseq {

namespace {

constexpr int kLeafSize = 8;

bool Closer(double d, int i, const KdTree::Hit& best) {
  return best.index < 0 || d < best.squared_distance ||
         (d == best.squared_distance && i < best.index);
}

}  // namespace

KdTree::KdTree(std::vector<Vec3> points) : points_(std::move(points)) {
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  if (!points_.empty()) Build(0, static_cast<int>(points_.size()), 0);
}

int KdTree::Build(int begin, int end, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({begin, end});
  if (end - begin <= kLeafSize || depth > 64) return id;
  Aabb box;
  for (int i = begin; i < end; ++i) box.Extend(points_[order_[i]]);
  const Vec3 size = box.Size();
  const int axis = size.x >= size.y && size.x >= size.z ? 0 : (size.y >= size.z ? 1 : 2);
  if (!(size[axis] > 0)) return id;
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) { return points_[a][axis] < points_[b][axis]; });
  const double split = points_[order_[mid]][axis];
  const int left = Build(begin, mid, depth + 1);
  const int right = Build(mid, end, depth + 1);
  Node& node = nodes_[id];
  node.split_axis = axis;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

void KdTree::Search(int id, Vec3 q, Hit& best) const {
  const Node& node = nodes_[id];
  if (node.split_axis < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int index = order_[i];
      const double d = SquaredDistance(q, points_[index]);
      if (Closer(d, index, best)) best = {index, d};
    }
    return;
  }
  // Left holds coordinates <= split, right holds coordinates >= split.
  const double diff = q[node.split_axis] - node.split;
  const int near = diff <= 0 ? node.left : node.right;
  const int far = diff <= 0 ? node.right : node.left;
  Search(near, q, best);
  if (diff * diff <= best.squared_distance) Search(far, q, best);
}

KdTree::Hit KdTree::Nearest(Vec3 query) const {
  Hit best;
  if (!nodes_.empty()) Search(0, query, best);
  return best;
}

std::vector<KdTree::Hit> NearestNeighbors(const std::vector<Vec3>& queries,
                                          const std::vector<Vec3>& targets,
                                          SearchMode mode) {
  std::vector<KdTree::Hit> hits(queries.size());
  if (mode == SearchMode::BruteForce) {
    for (size_t i = 0; i < queries.size(); ++i) {
      KdTree::Hit best;
      for (size_t j = 0; j < targets.size(); ++j) {
        const double d = SquaredDistance(queries[i], targets[j]);
        if (Closer(d, static_cast<int>(j), best)) best = {static_cast<int>(j), d};
      }
      hits[i] = best;
    }
    return hits;
  }
  const KdTree tree(targets);
  for (size_t i = 0; i < queries.size(); ++i) hits[i] = tree.Nearest(queries[i]);
  return hits;
}

}  // namespace cadseq
