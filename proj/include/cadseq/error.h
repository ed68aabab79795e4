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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cadseq {

enum class ErrorCode {
  // Command sequences.
  MalformedJson,
  UnknownCurveType,
  SketchWithoutExtrusion,
  ValueOutOfRange,
  MissingRequiredSlot,
  TruncatedStream,
  IllegalTokenAtPosition,
  DegenerateBbox,
  InvalidSequence,
  // Sketches.
  OpenLoop,
  DegenerateArc,
  CrossingLoops,
  MultipleOuterLoops,
  DegenerateRegion,
  // Solids.
  NonPositiveScale,
  EmptyExtent,
  OpenInputMesh,
  EmptyResult,
  EmptyMesh,
  // Metrics.
  InvalidFaceIndex,
  EmptyGroundTruth,
  EmptyCloud,
  MissingNormals,
  // Dataset pipeline.
  AugmentedInputToSplit,
  NegativeSigma,
  FractionOutOfRange,
  TooFewViews,
  ClientUnavailable,
  PrefixViolation,
  // I/O.
  Io,
  ParseError,
};

std::string_view ErrorName(ErrorCode code);

/// Every failure raised by the library carries one of the codes above. Kernel
/// failures inside ExecuteSequence additionally carry the 1-based step index.
class CadError : public std::runtime_error {
 public:
  CadError(ErrorCode code, const std::string& message,
           std::optional<int> step = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<int> step() const { return step_; }
  /// The message without the code and step decoration of what().
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<int> step_;
};

}  // namespace cadseq
