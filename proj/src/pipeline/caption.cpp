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
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "cadseq/error.h"
#include "cadseq/pipeline.h"
#include "random_util.h"

namespace cadseq {

CaptionRequest BuildCaptionRequest(std::string model_id,
                                   const std::vector<std::string>& view_ids,
                                   std::uint64_t seed) {
  std::vector<std::string> views;
  for (const std::string& v : view_ids) {
    if (std::find(views.begin(), views.end(), v) == views.end()) views.push_back(v);
  }
  if (views.size() < static_cast<size_t>(kCaptionViews)) {
    throw CadError(ErrorCode::TooFewViews, "need " + std::to_string(kCaptionViews) +
                                               " distinct views, got " +
                                               std::to_string(views.size()));
  }
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < static_cast<size_t>(kCaptionViews); ++i) {
    std::swap(views[i], views[i + internal::UniformBelow(rng, views.size() - i)]);
  }
  views.resize(kCaptionViews);

  CaptionRequest req;
  req.model_id = std::move(model_id);
  req.prompt = std::string(kCaptionPrompt);
  req.image_refs = std::move(views);
  req.required_prefix = std::string(kCaptionPrefix);
  return req;
}

std::string StubCaptioningClient::Caption(const CaptionRequest& request) {
  static constexpr const char* kBodies[] = {
      "a rectangular plate with a centered circular hole.",
      "a cylindrical boss rising from a flat square base.",
      "an L-shaped bracket with two mounting holes.",
      "a stepped block whose upper tier is narrower than the base.",
      "a ring-shaped washer with a thin uniform wall.",
      "a hexagonal prism with a through hole along its axis.",
  };
  constexpr std::uint64_t kCount = sizeof(kBodies) / sizeof(kBodies[0]);
  const std::uint64_t pick = DeriveSeed(0, request.model_id) % kCount;
  return std::string(kCaptionPrefix) + kBodies[pick];
}

namespace {

std::string Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int ParseCount(const std::string& key, const std::string& value, int min) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0' || v < min || v > 1000000) {
    throw CadError(ErrorCode::ParseError, "bad value for " + key + ": '" + value + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

CaptionConfig ParseCaptionConfig(std::string_view text) {
  CaptionConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw CadError(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "endpoint") {
      config.endpoint = value;
    } else if (key == "api_key") {
      config.api_key = value;
    } else if (key == "retries") {
      config.retries = ParseCount(key, value, 0);
    } else if (key == "concurrency") {
      config.concurrency = ParseCount(key, value, 1);
    } else if (key == "timeout_seconds") {
      config.timeout_seconds = ParseCount(key, value, 1);
    } else {
      throw CadError(ErrorCode::ParseError, "unknown config key '" + key + "'");
    }
  }
  if (const char* key = std::getenv("CADSEQ_CAPTION_API_KEY"); key != nullptr && *key) {
    config.api_key = key;
  }
  return config;
}

CaptionConfig LoadCaptionConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CadError(ErrorCode::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseCaptionConfig(buf.str());
}

std::string CaptionWithClient(const CaptionRequest& request, CaptioningClient& client,
                              int retries) {
  std::string caption;
  for (int attempt = 0;; ++attempt) {
    try {
      caption = client.Caption(request);
      break;
    } catch (const CadError& e) {
      if (e.code() != ErrorCode::ClientUnavailable) throw;
      if (attempt >= retries) {
        throw CadError(ErrorCode::ClientUnavailable,
                       "gave up after " + std::to_string(attempt + 1) +
                           " attempts: " + e.message());
      }
    }
  }
  if (caption.rfind(request.required_prefix, 0) != 0) {
    throw CadError(ErrorCode::PrefixViolation,
                   "caption does not start with '" + request.required_prefix + "'");
  }
  return caption;
}

std::vector<CaptionOutcome> CaptionBatch(const std::vector<CaptionRequest>& requests,
                                         CaptioningClient& client, int retries,
                                         int concurrency) {
  std::vector<CaptionOutcome> outcomes(requests.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < requests.size(); i = next++) {
      try {
        outcomes[i].caption = CaptionWithClient(requests[i], client, retries);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  const size_t threads =
      std::min<size_t>(std::max(1, concurrency), std::max<size_t>(1, requests.size()));
  std::vector<std::thread> pool;
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return outcomes;
}

}  // namespace cadseq
