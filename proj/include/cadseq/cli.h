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
#include <vector>

#include "cadseq/error.h"
#include "cadseq/mesh.h"
#include "cadseq/recon.h"
#include "cadseq/sketch2d.h"

namespace cadseq {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitKernel = 3;

/// Maps a library error to the exit-code ladder.
int ExitCodeFor(ErrorCode code);

struct EvalOptions {
  int points = kDefaultSamplePoints;
  double tau = kDefaultFScoreTau;
  int n_arc = kDefaultArcSegments;
  std::uint64_t seed = 0;
  ChamferVariant chamfer = ChamferVariant::L2;
  NormalMode nc = NormalMode::Absolute;
  bool weld = true;
  bool oracle = false;
};

/// One report row; metrics that could not be computed are NaN and `error`
/// names the failure.
struct EvalRow {
  std::string id;
  double chamfer_x100 = 0;
  double fscore_x100 = 0;
  double normalc_x100 = 0;
  double sege = 0;
  double dangel = 0;
  double sir_pct = 0;
  double fluxee_x100 = 0;
  std::string error;
};

/// A sequence JSON (".json") is executed; anything else is read as OBJ.
TriMesh LoadEvalMesh(const std::string& path, int n_arc);

EvalRow EvaluateMeshes(const std::string& id, const TriMesh& gt, const TriMesh& gen,
                       const EvalOptions& options);

/// Never throws: load and metric failures land in the error column.
EvalRow EvaluateFiles(const std::string& id, const std::string& gt_path,
                      const std::string& gen_path, const EvalOptions& options);

/// Column-wise mean over finite values, labelled "mean".
EvalRow MeanRow(const std::vector<EvalRow>& rows);

std::string CsvHeader();
std::string CsvRow(const EvalRow& row);

/// Runs the command-line tool in-process and returns its exit status.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cadseq
