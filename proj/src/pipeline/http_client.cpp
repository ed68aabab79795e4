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
#include "cadseq/pipeline.h"
#include "httplib.h"
#include "json.hpp"

namespace cadseq {

HttpCaptioningClient::HttpCaptioningClient(CaptionConfig config)
    : config_(std::move(config)) {}

std::string HttpCaptioningClient::Caption(const CaptionRequest& request) {
  const std::string& url = config_.endpoint;
  if (url.rfind("http://", 0) != 0) {
    throw CadError(ErrorCode::ClientUnavailable,
                   "endpoint must be an http:// URL, got '" + url + "'");
  }
  const size_t path_at = url.find('/', 7);
  const std::string host = url.substr(0, path_at);
  const std::string path = path_at == std::string::npos ? "/" : url.substr(path_at);

  httplib::Client client(host);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  nlohmann::json body;
  body["model_id"] = request.model_id;
  body["prompt"] = request.prompt;
  body["images"] = request.image_refs;
  const auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw CadError(ErrorCode::ClientUnavailable,
                   "request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw CadError(ErrorCode::ClientUnavailable, "HTTP status " + std::to_string(res->status));
  }
  const nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("caption") ||
      !reply["caption"].is_string()) {
    throw CadError(ErrorCode::ParseError, "reply lacks a string 'caption'");
  }
  return reply["caption"].get<std::string>();
}

}  // namespace cadseq
