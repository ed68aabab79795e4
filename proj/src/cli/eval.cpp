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
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cadseq/cli.h"
#include "cadseq/cmdseq.h"
#include "cadseq/kernel.h"
#include "cadseq/topology.h"

namespace cadseq {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CadError(ErrorCode::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void AppendError(EvalRow& row, const std::string& what) {
  if (!row.error.empty()) row.error += "; ";
  row.error += what;
}

std::string Describe(const std::exception& e) {
  if (const auto* ce = dynamic_cast<const CadError*>(&e)) {
    return std::string(ErrorName(ce->code())) + ": " + ce->message();
  }
  return e.what();
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::ClientUnavailable:
      return kExitIo;
    case ErrorCode::MalformedJson:
    case ErrorCode::UnknownCurveType:
    case ErrorCode::SketchWithoutExtrusion:
    case ErrorCode::ValueOutOfRange:
    case ErrorCode::MissingRequiredSlot:
    case ErrorCode::TruncatedStream:
    case ErrorCode::IllegalTokenAtPosition:
    case ErrorCode::InvalidSequence:
    case ErrorCode::OpenLoop:
    case ErrorCode::DegenerateArc:
    case ErrorCode::ParseError:
    case ErrorCode::AugmentedInputToSplit:
    case ErrorCode::NegativeSigma:
    case ErrorCode::FractionOutOfRange:
    case ErrorCode::TooFewViews:
    case ErrorCode::PrefixViolation:
      return kExitValidation;
    default:
      return kExitKernel;
  }
}

TriMesh LoadEvalMesh(const std::string& path, int n_arc) {
  if (EndsWith(path, ".json")) return ExecuteSequence(ParseSequence(ReadText(path)), n_arc);
  return LoadObj(path);
}

EvalRow EvaluateMeshes(const std::string& id, const TriMesh& gt_in, const TriMesh& gen_in,
                       const EvalOptions& options) {
  EvalRow row;
  row.id = id;
  const TriMesh gt = options.weld ? WeldVertices(gt_in) : gt_in;
  const TriMesh gen = options.weld ? WeldVertices(gen_in) : gen_in;
  const SearchMode mode = options.oracle ? SearchMode::BruteForce : SearchMode::Accelerated;

  try {
    const PointCloud gt_pc = SampleSurface(gt, options.points, options.seed);
    const PointCloud gen_pc = SampleSurface(gen, options.points, options.seed);
    const auto [a, b] = NormalizePair(gt_pc, gen_pc);
    row.chamfer_x100 = 100 * ChamferDistance(a, b, options.chamfer, mode);
    row.fscore_x100 = 100 * FScore(a, b, options.tau, mode).f;
    row.normalc_x100 = 100 * NormalConsistency(a, b, options.nc, mode);
  } catch (const std::exception& e) {
    row.chamfer_x100 = row.fscore_x100 = row.normalc_x100 = kNan;
    AppendError(row, Describe(e));
  }
  try {
    const TopoReport topo = MakeTopoReport(gt, gen, mode);
    row.sege = topo.seg_error;
    row.dangel = topo.dangel;
    row.sir_pct = topo.sir_pct;
    row.fluxee_x100 = topo.fluxee_x100;
  } catch (const std::exception& e) {
    row.sege = row.dangel = row.sir_pct = row.fluxee_x100 = kNan;
    AppendError(row, Describe(e));
  }
  return row;
}

EvalRow EvaluateFiles(const std::string& id, const std::string& gt_path,
                      const std::string& gen_path, const EvalOptions& options) {
  TriMesh gt, gen;
  try {
    gt = LoadEvalMesh(gt_path, options.n_arc);
  } catch (const std::exception& e) {
    EvalRow row{id, kNan, kNan, kNan, kNan, kNan, kNan, kNan, {}};
    AppendError(row, "gt " + Describe(e));
    return row;
  }
  try {
    gen = LoadEvalMesh(gen_path, options.n_arc);
  } catch (const CadError& e) {
    // An unbuildable generation still gets topology columns as an empty mesh.
    if (e.code() == ErrorCode::Io) {
      EvalRow row{id, kNan, kNan, kNan, kNan, kNan, kNan, kNan, {}};
      AppendError(row, "gen " + Describe(e));
      return row;
    }
    EvalRow row = EvaluateMeshes(id, gt, TriMesh{}, options);
    row.error = "gen " + Describe(e) + (row.error.empty() ? "" : "; " + row.error);
    return row;
  }
  return EvaluateMeshes(id, gt, gen, options);
}

EvalRow MeanRow(const std::vector<EvalRow>& rows) {
  EvalRow mean;
  mean.id = "mean";
  double EvalRow::*columns[] = {&EvalRow::chamfer_x100, &EvalRow::fscore_x100,
                                &EvalRow::normalc_x100, &EvalRow::sege,
                                &EvalRow::dangel,       &EvalRow::sir_pct,
                                &EvalRow::fluxee_x100};
  for (auto column : columns) {
    double sum = 0;
    int count = 0;
    for (const EvalRow& r : rows) {
      if (std::isfinite(r.*column)) {
        sum += r.*column;
        ++count;
      }
    }
    mean.*column = count ? sum / count : kNan;
  }
  return mean;
}

std::string CsvHeader() {
  return "id,chamfer_x100,fscore_x100,normalc_x100,sege,dangel,sir_pct,fluxee_x100,error\n";
}

std::string CsvRow(const EvalRow& row) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
  };
  std::string line = quote(row.id);
  char buf[64];
  for (double v : {row.chamfer_x100, row.fscore_x100, row.normalc_x100, row.sege, row.dangel,
                   row.sir_pct, row.fluxee_x100}) {
    if (std::isfinite(v)) {
      std::snprintf(buf, sizeof buf, ",%.6f", v == 0 ? 0.0 : v);
    } else {
      std::snprintf(buf, sizeof buf, ",nan");
    }
    line += buf;
  }
  return line + "," + quote(row.error) + "\n";
}

}  // namespace cadseq
