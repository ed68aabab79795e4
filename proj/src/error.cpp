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

namespace cadseq {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::UnknownCurveType: return "UnknownCurveType";
    case ErrorCode::SketchWithoutExtrusion: return "SketchWithoutExtrusion";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::MissingRequiredSlot: return "MissingRequiredSlot";
    case ErrorCode::TruncatedStream: return "TruncatedStream";
    case ErrorCode::IllegalTokenAtPosition: return "IllegalTokenAtPosition";
    case ErrorCode::DegenerateBbox: return "DegenerateBbox";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::OpenLoop: return "OpenLoop";
    case ErrorCode::DegenerateArc: return "DegenerateArc";
    case ErrorCode::CrossingLoops: return "CrossingLoops";
    case ErrorCode::MultipleOuterLoops: return "MultipleOuterLoops";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::EmptyExtent: return "EmptyExtent";
    case ErrorCode::OpenInputMesh: return "OpenInputMesh";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::InvalidFaceIndex: return "InvalidFaceIndex";
    case ErrorCode::EmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::MissingNormals: return "MissingNormals";
    case ErrorCode::AugmentedInputToSplit: return "AugmentedInputToSplit";
    case ErrorCode::NegativeSigma: return "NegativeSigma";
    case ErrorCode::FractionOutOfRange: return "FractionOutOfRange";
    case ErrorCode::TooFewViews: return "TooFewViews";
    case ErrorCode::ClientUnavailable: return "ClientUnavailable";
    case ErrorCode::PrefixViolation: return "PrefixViolation";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {
std::string Compose(ErrorCode code, const std::string& message,
                    std::optional<int> step) {
  std::string out(ErrorName(code));
  if (step) out += " (step " + std::to_string(*step) + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}
}  // namespace

CadError::CadError(ErrorCode code, const std::string& message,
                   std::optional<int> step)
    : std::runtime_error(Compose(code, message, step)), code_(code), message_(message), step_(step) {}

}  // namespace cadseq
