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

#include "cadseq/error.h"
#include "cadseq/kernel.h"

namespace cadseq {

TriMesh ExtrudeStep(const SequenceStep& step, int n_arc) {
  const auto regions = AssembleProfile(step.profile, n_arc);
  const ExtrudeCommand& e = step.extrude;
  return ExtrudeProfile(regions, MakePlaneFrame(e), e.extent_pos, e.extent_neg,
                        e.extent);
}

std::vector<TriMesh> ExecuteSequenceSteps(const CadSequence& seq, int n_arc) {
  if (seq.steps.empty()) throw CadError(ErrorCode::EmptyResult, "sequence has no steps");
  std::vector<TriMesh> out;
  out.reserve(seq.steps.size());
  TriMesh solid;
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    const int step = static_cast<int>(i) + 1;
    try {
      TriMesh tool = ExtrudeStep(seq.steps[i], n_arc);
      if (i == 0) {
        // The first extrusion always starts the scene.
        solid = std::move(tool);
      } else {
        solid = BooleanOp(solid, tool, seq.steps[i].extrude.boolean);
      }
    } catch (const CadError& e) {
      if (e.step()) throw;
      throw CadError(e.code(), e.message(), step);
    }
    out.push_back(solid);
  }
  return out;
}

TriMesh ExecuteSequence(const CadSequence& seq, int n_arc) {
  auto steps = ExecuteSequenceSteps(seq, n_arc);
  if (steps.back().Empty()) {
    throw CadError(ErrorCode::EmptyResult, "final solid is empty",
                   static_cast<int>(seq.steps.size()));
  }
  return std::move(steps.back());
}

}  // namespace cadseq
