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
#include "cadseq/kernel.h"
#include "cadseq/sketch2d.h"

namespace cadseq {

std::string_view ViolationName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptySequence: return "EmptySequence";
    case ViolationKind::EmptyProfile: return "EmptyProfile";
    case ViolationKind::EmptyLoop: return "EmptyLoop";
    case ViolationKind::MixedCircleLoop: return "MixedCircleLoop";
    case ViolationKind::OpenLoop: return "OpenLoop";
    case ViolationKind::ZeroLengthCurve: return "ZeroLengthCurve";
    case ViolationKind::DegenerateArc: return "DegenerateArc";
    case ViolationKind::NonPositiveRadius: return "NonPositiveRadius";
    case ViolationKind::NonPositiveScale: return "NonPositiveScale";
    case ViolationKind::NegativeExtent: return "NegativeExtent";
    case ViolationKind::EmptyExtent: return "EmptyExtent";
    case ViolationKind::FirstStepNotNewBody: return "FirstStepNotNewBody";
    case ViolationKind::ValueOutOfRange: return "ValueOutOfRange";
    case ViolationKind::NonFiniteValue: return "NonFiniteValue";
    case ViolationKind::CrossingLoops: return "CrossingLoops";
    case ViolationKind::DegenerateRegion: return "DegenerateRegion";
  }
  return "Unknown";
}

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kMinSweep = 1e-9;

class Collector {
 public:
  explicit Collector(std::vector<Violation>& out) : out_(out) {}

  void Add(ViolationKind kind, int step, int loop, int curve,
           std::string message) {
    out_.push_back({kind, step, loop, curve, std::move(message)});
  }

  // Returns false when a violation was recorded.
  bool InRange(double v, double lo, double hi, const char* name, int step,
               int loop = -1, int curve = -1) {
    if (!std::isfinite(v)) {
      Add(ViolationKind::NonFiniteValue, step, loop, curve,
          std::string(name) + " is not finite");
      return false;
    }
    if (v < lo || v > hi) {
      Add(ViolationKind::ValueOutOfRange, step, loop, curve,
          std::string(name) + " = " + std::to_string(v) + " outside [" +
              std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return false;
    }
    return true;
  }

 private:
  std::vector<Violation>& out_;
};

// Checks one loop; returns true when it is fit for discretization.
bool ValidateLoop(const Loop& loop, int step, int li, Collector& c) {
  if (loop.curves.empty()) {
    c.Add(ViolationKind::EmptyLoop, step, li, -1, "loop has no curves");
    return false;
  }
  bool ok = true;
  const bool has_circle = std::any_of(
      loop.curves.begin(), loop.curves.end(),
      [](const CurveCommand& cc) { return std::holds_alternative<Circle>(cc); });
  if (has_circle && loop.curves.size() > 1) {
    c.Add(ViolationKind::MixedCircleLoop, step, li, -1,
          "a circle must form a loop on its own");
    return false;
  }
  Vec2 cursor{0, 0};
  for (int ci = 0; ci < static_cast<int>(loop.curves.size()); ++ci) {
    const CurveCommand& curve = loop.curves[ci];
    if (const auto* circle = std::get_if<Circle>(&curve)) {
      ok &= c.InRange(circle->center.x, -1, 1, "circle.cx", step, li, ci);
      ok &= c.InRange(circle->center.y, -1, 1, "circle.cy", step, li, ci);
      if (!std::isfinite(circle->radius) || circle->radius <= 0) {
        c.Add(ViolationKind::NonPositiveRadius, step, li, ci,
              "circle radius must be positive");
        ok = false;
      } else {
        ok &= c.InRange(circle->radius, 0, 2, "circle.r", step, li, ci);
      }
      continue;
    }
    Vec2 end;
    if (const auto* line = std::get_if<Line>(&curve)) {
      end = line->end;
    } else {
      const auto& arc = std::get<Arc>(curve);
      end = arc.end;
      if (!std::isfinite(arc.alpha) || arc.alpha <= kMinSweep ||
          arc.alpha >= kTwoPi) {
        c.Add(ViolationKind::DegenerateArc, step, li, ci,
              "arc sweep must lie strictly inside (0, 2pi)");
        ok = false;
      }
    }
    const bool x_ok = c.InRange(end.x, -1, 1, "x", step, li, ci);
    const bool y_ok = c.InRange(end.y, -1, 1, "y", step, li, ci);
    ok &= x_ok && y_ok;
    if (x_ok && y_ok && Length(end - cursor) <= 1e-12) {
      if (std::holds_alternative<Arc>(curve)) {
        c.Add(ViolationKind::DegenerateArc, step, li, ci,
              "arc chord has zero length");
      } else {
        c.Add(ViolationKind::ZeroLengthCurve, step, li, ci,
              "line has zero length");
      }
      ok = false;
    }
    cursor = end;
  }
  if (!has_circle && Length(cursor) > kRawCloseEps) {
    c.Add(ViolationKind::OpenLoop, step, li, -1,
          "loop ends at (" + std::to_string(cursor.x) + ", " +
              std::to_string(cursor.y) + ") instead of the plane origin");
    ok = false;
  }
  return ok;
}

void ValidateExtrude(const ExtrudeCommand& e, int step, Collector& c) {
  const double pi = std::numbers::pi;
  c.InRange(e.theta, -pi, pi, "theta", step);
  c.InRange(e.phi, -pi, pi, "phi", step);
  c.InRange(e.gamma, -pi, pi, "gamma", step);
  c.InRange(e.origin.x, -1, 1, "ox", step);
  c.InRange(e.origin.y, -1, 1, "oy", step);
  c.InRange(e.origin.z, -1, 1, "oz", step);
  if (!std::isfinite(e.scale) || e.scale <= 0) {
    c.Add(ViolationKind::NonPositiveScale, step, -1, -1,
          "scale must be positive");
  } else {
    c.InRange(e.scale, 0, 2, "s", step);
  }
  bool extents_ok = true;
  for (auto [v, name] : {std::pair{e.extent_pos, "e_p"}, {e.extent_neg, "e_n"}}) {
    if (!std::isfinite(v)) {
      c.Add(ViolationKind::NonFiniteValue, step, -1, -1,
            std::string(name) + " is not finite");
      extents_ok = false;
    } else if (v < 0) {
      c.Add(ViolationKind::NegativeExtent, step, -1, -1,
            std::string(name) + " must be non-negative");
      extents_ok = false;
    } else {
      c.InRange(v, 0, 2, name, step);
    }
  }
  if (extents_ok) {
    auto [z0, z1] = ResolveExtent(e.extent_pos, e.extent_neg, e.extent);
    if (!(z1 > z0)) {
      c.Add(ViolationKind::EmptyExtent, step, -1, -1,
            std::string("extrusion covers no distance for extent kind ") +
                std::string(ExtentKindName(e.extent)));
    }
  }
}

}  // namespace

std::vector<Violation> ValidateSequence(const CadSequence& seq) {
  std::vector<Violation> out;
  Collector c(out);
  if (seq.steps.empty()) {
    c.Add(ViolationKind::EmptySequence, -1, -1, -1, "sequence has no steps");
    return out;
  }
  const BooleanKind first = seq.steps.front().extrude.boolean;
  if (first == BooleanKind::Intersect || first == BooleanKind::Cut) {
    c.Add(ViolationKind::FirstStepNotNewBody, 0, -1, -1,
          "first extrusion must create a new body");
  }
  for (int si = 0; si < static_cast<int>(seq.steps.size()); ++si) {
    const SequenceStep& step = seq.steps[si];
    ValidateExtrude(step.extrude, si, c);
    if (step.profile.loops.empty()) {
      c.Add(ViolationKind::EmptyProfile, si, -1, -1, "profile has no loops");
      continue;
    }
    bool loops_ok = true;
    for (int li = 0; li < static_cast<int>(step.profile.loops.size()); ++li) {
      loops_ok &= ValidateLoop(step.profile.loops[li], si, li, c);
    }
    if (!loops_ok) continue;
    try {
      for (const auto& poly : AssembleProfile(step.profile)) {
        Triangulate(poly);
      }
    } catch (const CadError& e) {
      const ViolationKind kind = e.code() == ErrorCode::CrossingLoops
                                     ? ViolationKind::CrossingLoops
                                     : e.code() == ErrorCode::DegenerateArc
                                           ? ViolationKind::DegenerateArc
                                           : ViolationKind::DegenerateRegion;
      c.Add(kind, si, -1, -1, e.what());
    }
  }
  return out;
}

std::vector<std::string> SequenceWarnings(const CadSequence& seq) {
  std::vector<std::string> out;
  if (!seq.steps.empty() && seq.steps[0].extrude.boolean == BooleanKind::Join) {
    out.push_back("step 1: join onto an empty scene is treated as a new body");
  }
  return out;
}

}  // namespace cadseq
