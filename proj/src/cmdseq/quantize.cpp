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
#include <cmath>
#include <numbers>
#include <string>

#include "cadseq/cmdseq.h"
#include "cadseq/error.h"

namespace cadseq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLevels = 255;
// Quantized plane origin, the implicit start and end of every curve loop.
const std::uint8_t kOriginLevel = QuantizeValue(0.0, {-1, 1});

}  // namespace

std::optional<SlotRange> RangeOfSlot(int slot) {
  switch (slot) {
    case kSlotX:
    case kSlotY:
    case kSlotOriginX:
    case kSlotOriginY:
    case kSlotOriginZ:
      return SlotRange{-1, 1};
    case kSlotAlpha:
      return SlotRange{0, 2 * kPi};
    case kSlotRadius:
    case kSlotScale:
    case kSlotExtentPos:
    case kSlotExtentNeg:
      return SlotRange{0, 2};
    case kSlotTheta:
    case kSlotPhi:
    case kSlotGamma:
      return SlotRange{-kPi, kPi};
    default:
      return std::nullopt;
  }
}

std::vector<int> SlotsOfType(CommandType type) {
  switch (type) {
    case CommandType::Line: return {kSlotX, kSlotY};
    case CommandType::Arc: return {kSlotX, kSlotY, kSlotAlpha, kSlotFlag};
    case CommandType::Circle: return {kSlotX, kSlotY, kSlotRadius};
    case CommandType::Extrude:
      return {kSlotTheta,     kSlotPhi,       kSlotGamma,     kSlotOriginX,
              kSlotOriginY,   kSlotOriginZ,   kSlotScale,     kSlotExtentPos,
              kSlotExtentNeg, kSlotBoolean,   kSlotExtentKind};
    default: return {};
  }
}

std::uint8_t QuantizeValue(double v, SlotRange range) {
  const double span = range.hi - range.lo;
  const double slack = 1e-12 * span;
  if (!std::isfinite(v) || v < range.lo - slack || v > range.hi + slack) {
    throw CadError(ErrorCode::ValueOutOfRange,
                   std::to_string(v) + " outside [" + std::to_string(range.lo) +
                       ", " + std::to_string(range.hi) + "]");
  }
  const double t = std::clamp((v - range.lo) / span, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(t * kLevels + 0.5));
}

double DequantizeValue(std::uint8_t q, SlotRange range) {
  if (q == 0) return range.lo;
  if (q == kLevels) return range.hi;
  return range.lo + (range.hi - range.lo) * (static_cast<double>(q) / kLevels);
}

namespace {

void Put(CommandRow& row, int slot, double v) {
  try {
    row.slots[slot] = QuantizeValue(v, *RangeOfSlot(slot));
  } catch (const CadError& e) {
    throw CadError(ErrorCode::ValueOutOfRange,
                   "slot " + std::to_string(slot) + ": " + e.what());
  }
}

CommandRow Marker(CommandType type) {
  CommandRow row;
  row.type = type;
  return row;
}

}  // namespace

VectorizedSequence QuantizeSequence(const CadSequence& seq) {
  VectorizedSequence out;
  for (const SequenceStep& step : seq.steps) {
    out.rows.push_back(Marker(CommandType::StartSketch));
    for (const Loop& loop : step.profile.loops) {
      for (const CurveCommand& curve : loop.curves) {
        CommandRow row;
        if (const auto* line = std::get_if<Line>(&curve)) {
          row.type = CommandType::Line;
          Put(row, kSlotX, line->end.x);
          Put(row, kSlotY, line->end.y);
        } else if (const auto* arc = std::get_if<Arc>(&curve)) {
          row.type = CommandType::Arc;
          Put(row, kSlotX, arc->end.x);
          Put(row, kSlotY, arc->end.y);
          Put(row, kSlotAlpha, arc->alpha);
          row.slots[kSlotFlag] = arc->ccw ? 1 : 0;
        } else {
          const auto& circle = std::get<Circle>(curve);
          row.type = CommandType::Circle;
          Put(row, kSlotX, circle.center.x);
          Put(row, kSlotY, circle.center.y);
          Put(row, kSlotRadius, circle.radius);
        }
        out.rows.push_back(row);
      }
    }
    out.rows.push_back(Marker(CommandType::StartExtrude));
    const ExtrudeCommand& e = step.extrude;
    CommandRow row;
    row.type = CommandType::Extrude;
    Put(row, kSlotTheta, e.theta);
    Put(row, kSlotPhi, e.phi);
    Put(row, kSlotGamma, e.gamma);
    Put(row, kSlotOriginX, e.origin.x);
    Put(row, kSlotOriginY, e.origin.y);
    Put(row, kSlotOriginZ, e.origin.z);
    Put(row, kSlotScale, e.scale);
    Put(row, kSlotExtentPos, e.extent_pos);
    Put(row, kSlotExtentNeg, e.extent_neg);
    row.slots[kSlotBoolean] = static_cast<std::uint8_t>(e.boolean);
    row.slots[kSlotExtentKind] = static_cast<std::uint8_t>(e.extent);
    out.rows.push_back(row);
  }
  out.rows.push_back(Marker(CommandType::EndSequence));
  return out;
}

namespace {

std::uint8_t Required(const CommandRow& row, int slot, size_t index) {
  if (!row.slots[slot]) {
    throw CadError(ErrorCode::MissingRequiredSlot,
                   "row " + std::to_string(index) + " slot " +
                       std::to_string(slot));
  }
  return *row.slots[slot];
}

double Value(const CommandRow& row, int slot, size_t index) {
  return DequantizeValue(Required(row, slot, index), *RangeOfSlot(slot));
}

std::uint8_t Discrete(const CommandRow& row, int slot, size_t index,
                      std::uint8_t max) {
  const std::uint8_t v = Required(row, slot, index);
  if (v > max) {
    throw CadError(ErrorCode::ValueOutOfRange,
                   "row " + std::to_string(index) + " slot " +
                       std::to_string(slot) + " holds " + std::to_string(v));
  }
  return v;
}

}  // namespace

CadSequence DequantizeSequence(const VectorizedSequence& vseq) {
  CadSequence out;
  SequenceStep step;
  Loop open;
  auto flush_loop = [&] {
    if (!open.curves.empty()) step.profile.loops.push_back(std::move(open));
    open = Loop{};
  };
  for (size_t i = 0; i < vseq.rows.size(); ++i) {
    const CommandRow& row = vseq.rows[i];
    switch (row.type) {
      case CommandType::StartSketch:
      case CommandType::StartExtrude:
        break;
      case CommandType::Line:
      case CommandType::Arc: {
        const std::uint8_t qx = Required(row, kSlotX, i);
        const std::uint8_t qy = Required(row, kSlotY, i);
        const bool closes = qx == kOriginLevel && qy == kOriginLevel;
        const Vec2 end = closes ? Vec2{0, 0}
                                : Vec2{Value(row, kSlotX, i), Value(row, kSlotY, i)};
        if (row.type == CommandType::Line) {
          open.curves.push_back(Line{end});
        } else {
          open.curves.push_back(Arc{end, Value(row, kSlotAlpha, i),
                                    Discrete(row, kSlotFlag, i, 1) == 1});
        }
        if (closes) flush_loop();
        break;
      }
      case CommandType::Circle: {
        flush_loop();
        Loop circle;
        circle.curves.push_back(
            Circle{{Value(row, kSlotX, i), Value(row, kSlotY, i)},
                   Value(row, kSlotRadius, i)});
        step.profile.loops.push_back(std::move(circle));
        break;
      }
      case CommandType::Extrude: {
        flush_loop();
        ExtrudeCommand& e = step.extrude;
        e.theta = Value(row, kSlotTheta, i);
        e.phi = Value(row, kSlotPhi, i);
        e.gamma = Value(row, kSlotGamma, i);
        e.origin = {Value(row, kSlotOriginX, i), Value(row, kSlotOriginY, i),
                    Value(row, kSlotOriginZ, i)};
        e.scale = Value(row, kSlotScale, i);
        e.extent_pos = Value(row, kSlotExtentPos, i);
        e.extent_neg = Value(row, kSlotExtentNeg, i);
        e.boolean = static_cast<BooleanKind>(Discrete(row, kSlotBoolean, i, 3));
        e.extent = static_cast<ExtentKind>(Discrete(row, kSlotExtentKind, i, 2));
        out.steps.push_back(std::move(step));
        step = SequenceStep{};
        break;
      }
      case CommandType::EndSequence:
        i = vseq.rows.size();
        break;
    }
  }
  if (!open.curves.empty() || !step.profile.loops.empty()) {
    throw CadError(ErrorCode::SketchWithoutExtrusion,
                   "sketch after the last extrusion");
  }
  return out;
}

}  // namespace cadseq
