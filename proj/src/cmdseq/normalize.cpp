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

#include "cadseq/cmdseq.h"
#include "cadseq/error.h"

namespace cadseq {

CadSequence NormalizeSequence(const CadSequence& seq, const Aabb& bbox) {
  const Vec3 size = bbox.Size();
  if (bbox.Empty() || !(size.x > 1e-12 && size.y > 1e-12 && size.z > 1e-12) ||
      !std::isfinite(bbox.MaxExtent())) {
    throw CadError(ErrorCode::DegenerateBbox, "bounding box encloses no volume");
  }
  const double k = 2.0 / bbox.MaxExtent();
  const Vec3 c = bbox.Center();
  CadSequence out = seq;
  for (SequenceStep& step : out.steps) {
    ExtrudeCommand& e = step.extrude;
    e.origin = (e.origin - c) * k;
    e.scale *= k;
    e.extent_pos *= k;
    e.extent_neg *= k;
  }
  return out;
}

}  // namespace cadseq
