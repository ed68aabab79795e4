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
#include <fstream>
#include <random>

#include "json.hpp"

#include "cadseq/error.h"
#include "cadseq/pipeline.h"
#include "random_util.h"

namespace cadseq {

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Test: return "test";
    case Split::Unassigned: break;
  }
  return "unassigned";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "test") return Split::Test;
  if (name == "unassigned" || name.empty()) return Split::Unassigned;
  throw CadError(ErrorCode::ParseError, "unknown split '" + std::string(name) + "'");
}

std::vector<CadSequence> AugmentPrefixes(const CadSequence& seq) {
  std::vector<CadSequence> out;
  for (size_t i = 1; i <= seq.steps.size(); ++i) {
    CadSequence prefix;
    prefix.steps.assign(seq.steps.begin(), seq.steps.begin() + i);
    out.push_back(std::move(prefix));
  }
  return out;
}

std::vector<DatasetRecord> SplitDataset(std::vector<DatasetRecord> records, double ratio,
                                        std::uint64_t seed) {
  if (!(ratio >= 0 && ratio <= 1)) {
    throw CadError(ErrorCode::FractionOutOfRange, "split ratio must lie in [0, 1]");
  }
  for (const DatasetRecord& r : records) {
    if (r.id != r.root_id) {
      throw CadError(ErrorCode::AugmentedInputToSplit,
                     "record '" + r.id + "' is derived from '" + r.root_id + "'");
    }
  }
  std::mt19937_64 rng(seed);
  internal::Shuffle(records, rng);
  const double exact = ratio * static_cast<double>(records.size());
  const size_t train = std::min(records.size(),
                                static_cast<size_t>(std::floor(exact + 1e-9 * std::max(1.0, exact))));
  for (size_t i = 0; i < records.size(); ++i) {
    records[i].split = i < train ? Split::Train : Split::Test;
  }
  return records;
}

std::vector<DatasetRecord> AugmentTrainSplit(const std::vector<DatasetRecord>& records) {
  std::vector<DatasetRecord> out;
  for (const DatasetRecord& r : records) {
    out.push_back(r);
    if (r.split != Split::Train) continue;
    const auto prefixes = AugmentPrefixes(r.sequence);
    for (size_t i = 0; i + 1 < prefixes.size(); ++i) {
      DatasetRecord derived;
      derived.id = r.root_id + "#p" + std::to_string(i + 1);
      derived.root_id = r.root_id;
      derived.split = Split::Train;
      derived.sequence = prefixes[i];
      out.push_back(std::move(derived));
    }
  }
  return out;
}

std::string ManifestLine(const DatasetRecord& record) {
  nlohmann::json j;
  j["id"] = record.id;
  j["root_id"] = record.root_id;
  j["split"] = std::string(SplitName(record.split));
  j["path"] = record.path;
  return j.dump();
}

DatasetRecord ParseManifestLine(std::string_view line) {
  const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw CadError(ErrorCode::MalformedJson, "manifest line is not a JSON object");
  }
  auto text = [&](const char* key, bool required) -> std::string {
    const auto it = j.find(key);
    if (it == j.end()) {
      if (required) throw CadError(ErrorCode::MalformedJson, std::string("missing '") + key + "'");
      return {};
    }
    if (!it->is_string()) {
      throw CadError(ErrorCode::MalformedJson, std::string("'") + key + "' must be a string");
    }
    return it->get<std::string>();
  };
  DatasetRecord r;
  r.id = text("id", true);
  r.root_id = text("root_id", false);
  if (r.root_id.empty()) r.root_id = r.id;
  r.split = ParseSplit(text("split", false));
  r.path = text("path", false);
  return r;
}

std::vector<DatasetRecord> ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CadError(ErrorCode::Io, "cannot read " + path);
  std::vector<DatasetRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(ParseManifestLine(line));
    } catch (const CadError& e) {
      throw CadError(e.code(), path + ":" + std::to_string(line_no) + ": " + e.message());
    }
  }
  return records;
}

std::uint64_t DeriveSeed(std::uint64_t master_seed, std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return internal::SplitMix64(master_seed ^ internal::SplitMix64(h));
}

}  // namespace cadseq
