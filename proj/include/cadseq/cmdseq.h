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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cadseq/geometry.h"

namespace cadseq {

// ---------------------------------------------------------------------------
// Structured command sequences
// ---------------------------------------------------------------------------

/// Straight segment from the running point to `end`.
struct Line {
  Vec2 end;
  friend bool operator==(const Line&, const Line&) = default;
};

/// Circular arc from the running point to `end` sweeping `alpha` radians,
/// counter-clockwise when `ccw` is set.
struct Arc {
  Vec2 end;
  double alpha = 0;
  bool ccw = true;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Full circle. Always forms a loop on its own.
struct Circle {
  Vec2 center;
  double radius = 0;
  friend bool operator==(const Circle&, const Circle&) = default;
};

using CurveCommand = std::variant<Line, Arc, Circle>;

/// Chain of curves. Every non-circle loop starts at the sketch-plane origin
/// and must return to it.
struct Loop {
  std::vector<CurveCommand> curves;

  bool IsCircle() const {
    return curves.size() == 1 && std::holds_alternative<Circle>(curves[0]);
  }
  friend bool operator==(const Loop&, const Loop&) = default;
};

struct Profile {
  std::vector<Loop> loops;
  friend bool operator==(const Profile&, const Profile&) = default;
};

enum class BooleanKind : std::uint8_t { NewBody = 0, Join = 1, Intersect = 2, Cut = 3 };
enum class ExtentKind : std::uint8_t { OneSided = 0, Symmetric = 1, TwoSided = 2 };

struct ExtrudeCommand {
  double theta = 0, phi = 0, gamma = 0;  // Z-Y-Z Euler angles, radians
  Vec3 origin;                           // sketch-plane origin
  double scale = 1;
  double extent_pos = 0;  // travel along +normal
  double extent_neg = 0;  // travel along -normal
  BooleanKind boolean = BooleanKind::NewBody;
  ExtentKind extent = ExtentKind::OneSided;
  friend bool operator==(const ExtrudeCommand&, const ExtrudeCommand&) = default;
};

struct SequenceStep {
  Profile profile;
  ExtrudeCommand extrude;
  friend bool operator==(const SequenceStep&, const SequenceStep&) = default;
};

struct CadSequence {
  std::vector<SequenceStep> steps;
  friend bool operator==(const CadSequence&, const CadSequence&) = default;
};

std::string_view BooleanKindName(BooleanKind kind);  // "new", "join", ...
std::string_view ExtentKindName(ExtentKind kind);    // "one", "symmetric", ...

// ---------------------------------------------------------------------------
// JSON I/O and validation
// ---------------------------------------------------------------------------

/// Structural parse only: checks JSON shape and curve/enum names but not value
/// ranges or loop closure. Throws MalformedJson, UnknownCurveType or
/// SketchWithoutExtrusion.
CadSequence ParseSequenceUnchecked(std::string_view text);

/// ParseSequenceUnchecked followed by ValidateSequence. Violations are raised
/// as ValueOutOfRange when any of them is a range violation, otherwise as
/// InvalidSequence.
CadSequence ParseSequence(std::string_view text);

/// Canonical JSON: sorted keys, every float rounded to 9 significant digits.
std::string SerializeSequence(const CadSequence& seq);

/// Rounds to the nearest double that prints exactly with 9 significant digits.
double RoundToCanonical(double v);

enum class ViolationKind {
  EmptySequence,
  EmptyProfile,
  EmptyLoop,
  MixedCircleLoop,
  OpenLoop,
  ZeroLengthCurve,
  DegenerateArc,
  NonPositiveRadius,
  NonPositiveScale,
  NegativeExtent,
  EmptyExtent,
  FirstStepNotNewBody,
  ValueOutOfRange,
  NonFiniteValue,
  CrossingLoops,
  DegenerateRegion,
};

std::string_view ViolationName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int step = -1;   // 0-based, -1 when not applicable
  int loop = -1;
  int curve = -1;
  std::string message;
};

/// Empty iff every structural and geometric invariant of the sequence holds.
std::vector<Violation> ValidateSequence(const CadSequence& seq);

/// Accepted-but-suspicious constructs, e.g. a Join on the first step (which the
/// kernel treats as NewBody).
std::vector<std::string> SequenceWarnings(const CadSequence& seq);

/// Raw input closure tolerance and post-quantization closure tolerance.
inline constexpr double kRawCloseEps = 1e-9;
inline constexpr double kQuantizedCloseEps = 1e-6;

// ---------------------------------------------------------------------------
// Vectorized form
// ---------------------------------------------------------------------------

enum class CommandType : std::uint8_t {
  Line,
  Arc,
  Circle,
  Extrude,
  StartSketch,
  StartExtrude,
  EndSequence,
};

inline constexpr int kNumSlots = 16;

enum Slot : int {
  kSlotX = 0,
  kSlotY,
  kSlotAlpha,
  kSlotFlag,
  kSlotRadius,
  kSlotTheta,
  kSlotPhi,
  kSlotGamma,
  kSlotOriginX,
  kSlotOriginY,
  kSlotOriginZ,
  kSlotScale,
  kSlotExtentPos,
  kSlotExtentNeg,
  kSlotBoolean,
  kSlotExtentKind,
};

/// Continuous value range of a slot. Discrete slots (flag, boolean, extent
/// kind) have no range and are stored as small integers.
struct SlotRange {
  double lo;
  double hi;
};
std::optional<SlotRange> RangeOfSlot(int slot);

/// Slots a command type fills; everything else is PAD.
std::vector<int> SlotsOfType(CommandType type);

/// round_half_up((v - lo) / (hi - lo) * 255). Throws ValueOutOfRange outside
/// [lo, hi] (beyond a 1e-12 relative slack).
std::uint8_t QuantizeValue(double v, SlotRange range);
double DequantizeValue(std::uint8_t q, SlotRange range);

struct CommandRow {
  CommandType type = CommandType::EndSequence;
  std::array<std::optional<std::uint8_t>, kNumSlots> slots{};  // nullopt = PAD
  friend bool operator==(const CommandRow&, const CommandRow&) = default;
};

struct VectorizedSequence {
  std::vector<CommandRow> rows;
  friend bool operator==(const VectorizedSequence&, const VectorizedSequence&) = default;
};

/// Per step: StartSketch, one row per curve (loops flattened in order),
/// StartExtrude, Extrude. A single EndSequence row terminates the sequence.
VectorizedSequence QuantizeSequence(const CadSequence& seq);

/// Inverse of QuantizeSequence. Loops are recovered by closure detection: a
/// loop ends when its running endpoint returns to the quantized plane origin;
/// the closing endpoint is restored to the exact origin. Circle rows are
/// always standalone loops. StartSketch/StartExtrude rows are optional.
CadSequence DequantizeSequence(const VectorizedSequence& vseq);

// ---------------------------------------------------------------------------
// Token streams
// ---------------------------------------------------------------------------

using Token = int;
inline constexpr Token kTokLine = 256;
inline constexpr Token kTokArc = 257;
inline constexpr Token kTokCircle = 258;
inline constexpr Token kTokExtrude = 259;
inline constexpr Token kTokStartSketch = 260;
inline constexpr Token kTokStartExtrude = 261;
inline constexpr Token kTokEndSequence = 262;
inline constexpr Token kTokPad = 263;
inline constexpr Token kVocabularySize = 264;

struct TokenStream {
  std::vector<Token> tokens;
  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

Token TokenOfType(CommandType type);

/// Each row becomes its type token followed by its slots up to the last
/// non-PAD one; interior PADs are emitted as kTokPad.
TokenStream Tokenize(const VectorizedSequence& vseq);

/// Throws TruncatedStream when EndSequence is missing and
/// IllegalTokenAtPosition for a value token where a type token is required
/// (including surplus slots for the current command type).
VectorizedSequence Detokenize(const TokenStream& stream);

/// Token file line: decimal ids separated by single spaces.
std::string FormatTokenLine(const TokenStream& stream);
TokenStream ParseTokenLine(std::string_view line);

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

/// Rescales origins, scales and extents by one isotropic factor plus a
/// translation so that geometry with bounding box `bbox` maps to a box centred
/// at the origin with maximum extent 2. Throws DegenerateBbox.
CadSequence NormalizeSequence(const CadSequence& seq, const Aabb& bbox);

}  // namespace cadseq
