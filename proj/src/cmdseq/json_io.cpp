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

#include <cstdio>
#include <cstdlib>
#include <string>

#include "cadseq/cmdseq.h"
#include "cadseq/error.h"
#include "json.hpp"

namespace cadseq {

using nlohmann::json;

std::string_view BooleanKindName(BooleanKind kind) {
  switch (kind) {
    case BooleanKind::NewBody: return "new";
    case BooleanKind::Join: return "join";
    case BooleanKind::Intersect: return "intersect";
    case BooleanKind::Cut: return "cut";
  }
  return "new";
}

std::string_view ExtentKindName(ExtentKind kind) {
  switch (kind) {
    case ExtentKind::OneSided: return "one";
    case ExtentKind::Symmetric: return "symmetric";
    case ExtentKind::TwoSided: return "two";
  }
  return "one";
}

double RoundToCanonical(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;  // no negative zero in canonical output
}

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw CadError(ErrorCode::MalformedJson, what);
}

const json& Member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) Malformed(where + " is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) Malformed(where + " lacks \"" + key + "\"");
  return *it;
}

double Number(const json& obj, const char* key, const std::string& where) {
  const json& v = Member(obj, key, where);
  if (!v.is_number()) Malformed(where + "." + key + " is not a number");
  return v.get<double>();
}

std::string String(const json& obj, const char* key, const std::string& where) {
  const json& v = Member(obj, key, where);
  if (!v.is_string()) Malformed(where + "." + key + " is not a string");
  return v.get<std::string>();
}

CurveCommand ParseCurve(const json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) {
    Malformed(where + " must hold exactly one curve");
  }
  const std::string type = j.begin().key();
  const json& body = j.begin().value();
  const std::string at = where + "." + type;
  if (type == "line") {
    return Line{{Number(body, "x", at), Number(body, "y", at)}};
  }
  if (type == "arc") {
    const json& ccw = Member(body, "ccw", at);
    if (!ccw.is_boolean()) Malformed(at + ".ccw is not a boolean");
    return Arc{{Number(body, "x", at), Number(body, "y", at)},
               Number(body, "alpha", at), ccw.get<bool>()};
  }
  if (type == "circle") {
    return Circle{{Number(body, "cx", at), Number(body, "cy", at)},
                  Number(body, "r", at)};
  }
  throw CadError(ErrorCode::UnknownCurveType,
                 "\"" + type + "\" at " + where);
}

Loop ParseLoop(const json& j, const std::string& where) {
  if (!j.is_object()) Malformed(where + " is not an object");
  Loop loop;
  if (j.contains("circle")) {
    loop.curves.push_back(ParseCurve(json{{"circle", j["circle"]}}, where));
    return loop;
  }
  auto it = j.find("curves");
  if (it == j.end()) {
    if (j.size() == 1) {
      throw CadError(ErrorCode::UnknownCurveType,
                     "\"" + j.begin().key() + "\" at " + where);
    }
    Malformed(where + " lacks \"curves\"");
  }
  if (!it->is_array()) Malformed(where + ".curves is not an array");
  for (size_t i = 0; i < it->size(); ++i) {
    loop.curves.push_back(
        ParseCurve((*it)[i], where + ".curves[" + std::to_string(i) + "]"));
  }
  return loop;
}

BooleanKind ParseBoolean(const std::string& s, const std::string& where) {
  if (s == "new") return BooleanKind::NewBody;
  if (s == "join") return BooleanKind::Join;
  if (s == "intersect") return BooleanKind::Intersect;
  if (s == "cut") return BooleanKind::Cut;
  Malformed(where + ".bool has unknown value \"" + s + "\"");
}

ExtentKind ParseExtentKind(const std::string& s, const std::string& where) {
  if (s == "one") return ExtentKind::OneSided;
  if (s == "symmetric") return ExtentKind::Symmetric;
  if (s == "two") return ExtentKind::TwoSided;
  Malformed(where + ".extent has unknown value \"" + s + "\"");
}

ExtrudeCommand ParseExtrude(const json& j, const std::string& where) {
  ExtrudeCommand e;
  e.theta = Number(j, "theta", where);
  e.phi = Number(j, "phi", where);
  e.gamma = Number(j, "gamma", where);
  e.origin = {Number(j, "ox", where), Number(j, "oy", where),
              Number(j, "oz", where)};
  e.scale = Number(j, "s", where);
  e.extent_pos = Number(j, "e_p", where);
  e.extent_neg = Number(j, "e_n", where);
  e.boolean = ParseBoolean(String(j, "bool", where), where);
  e.extent = ParseExtentKind(String(j, "extent", where), where);
  return e;
}

json CurveToJson(const CurveCommand& curve) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Line>) {
          return {{"line",
                   {{"x", RoundToCanonical(c.end.x)},
                    {"y", RoundToCanonical(c.end.y)}}}};
        } else if constexpr (std::is_same_v<T, Arc>) {
          return {{"arc",
                   {{"x", RoundToCanonical(c.end.x)},
                    {"y", RoundToCanonical(c.end.y)},
                    {"alpha", RoundToCanonical(c.alpha)},
                    {"ccw", c.ccw}}}};
        } else {
          return {{"circle",
                   {{"cx", RoundToCanonical(c.center.x)},
                    {"cy", RoundToCanonical(c.center.y)},
                    {"r", RoundToCanonical(c.radius)}}}};
        }
      },
      curve);
}

}  // namespace

CadSequence ParseSequenceUnchecked(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Malformed(e.what());
  }
  const json& steps = Member(root, "steps", "document");
  if (!steps.is_array()) Malformed("steps is not an array");
  CadSequence seq;
  for (size_t i = 0; i < steps.size(); ++i) {
    const std::string where = "steps[" + std::to_string(i) + "]";
    const json& step = steps[i];
    if (!step.is_object()) Malformed(where + " is not an object");
    if (!step.contains("extrude")) {
      throw CadError(ErrorCode::SketchWithoutExtrusion, where);
    }
    const json& profile = Member(step, "profile", where);
    const json& loops = Member(profile, "loops", where + ".profile");
    if (!loops.is_array()) Malformed(where + ".profile.loops is not an array");
    SequenceStep s;
    for (size_t l = 0; l < loops.size(); ++l) {
      s.profile.loops.push_back(ParseLoop(
          loops[l], where + ".profile.loops[" + std::to_string(l) + "]"));
    }
    s.extrude = ParseExtrude(step["extrude"], where + ".extrude");
    seq.steps.push_back(std::move(s));
  }
  return seq;
}

CadSequence ParseSequence(std::string_view text) {
  CadSequence seq = ParseSequenceUnchecked(text);
  const auto violations = ValidateSequence(seq);
  if (violations.empty()) return seq;
  bool range = false;
  std::string message;
  for (const auto& v : violations) {
    range |= v.kind == ViolationKind::ValueOutOfRange;
    if (!message.empty()) message += "; ";
    message += std::string(ViolationName(v.kind)) + " " + v.message;
  }
  throw CadError(range ? ErrorCode::ValueOutOfRange : ErrorCode::InvalidSequence,
                 message);
}

std::string SerializeSequence(const CadSequence& seq) {
  json steps = json::array();
  for (const auto& step : seq.steps) {
    json loops = json::array();
    for (const auto& loop : step.profile.loops) {
      if (loop.IsCircle()) {
        loops.push_back(CurveToJson(loop.curves[0]));
        continue;
      }
      json curves = json::array();
      for (const auto& c : loop.curves) curves.push_back(CurveToJson(c));
      loops.push_back({{"curves", std::move(curves)}});
    }
    const ExtrudeCommand& e = step.extrude;
    json extrude = {{"theta", RoundToCanonical(e.theta)},
                    {"phi", RoundToCanonical(e.phi)},
                    {"gamma", RoundToCanonical(e.gamma)},
                    {"ox", RoundToCanonical(e.origin.x)},
                    {"oy", RoundToCanonical(e.origin.y)},
                    {"oz", RoundToCanonical(e.origin.z)},
                    {"s", RoundToCanonical(e.scale)},
                    {"e_p", RoundToCanonical(e.extent_pos)},
                    {"e_n", RoundToCanonical(e.extent_neg)},
                    {"bool", std::string(BooleanKindName(e.boolean))},
                    {"extent", std::string(ExtentKindName(e.extent))}};
    steps.push_back({{"profile", {{"loops", std::move(loops)}}},
                     {"extrude", std::move(extrude)}});
  }
  return json{{"steps", std::move(steps)}}.dump() + "\n";
}

}  // namespace cadseq
