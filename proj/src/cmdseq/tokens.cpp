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
#include <cctype>
#include <charconv>
#include <string>

#include "cadseq/cmdseq.h"
#include "cadseq/error.h"

namespace cadseq {

Token TokenOfType(CommandType type) {
  switch (type) {
    case CommandType::Line: return kTokLine;
    case CommandType::Arc: return kTokArc;
    case CommandType::Circle: return kTokCircle;
    case CommandType::Extrude: return kTokExtrude;
    case CommandType::StartSketch: return kTokStartSketch;
    case CommandType::StartExtrude: return kTokStartExtrude;
    case CommandType::EndSequence: return kTokEndSequence;
  }
  return kTokEndSequence;
}

namespace {

std::optional<CommandType> TypeOfToken(Token t) {
  switch (t) {
    case kTokLine: return CommandType::Line;
    case kTokArc: return CommandType::Arc;
    case kTokCircle: return CommandType::Circle;
    case kTokExtrude: return CommandType::Extrude;
    case kTokStartSketch: return CommandType::StartSketch;
    case kTokStartExtrude: return CommandType::StartExtrude;
    case kTokEndSequence: return CommandType::EndSequence;
    default: return std::nullopt;
  }
}

bool IsSlotToken(Token t) { return (t >= 0 && t <= 255) || t == kTokPad; }

[[noreturn]] void Illegal(size_t pos, Token t, const std::string& why) {
  throw CadError(ErrorCode::IllegalTokenAtPosition,
                 "token " + std::to_string(t) + " at position " +
                     std::to_string(pos) + ": " + why);
}

}  // namespace

TokenStream Tokenize(const VectorizedSequence& vseq) {
  TokenStream out;
  for (const CommandRow& row : vseq.rows) {
    out.tokens.push_back(TokenOfType(row.type));
    int last = -1;
    for (int s = 0; s < kNumSlots; ++s) {
      if (row.slots[s]) last = s;
    }
    for (int s = 0; s <= last; ++s) {
      out.tokens.push_back(row.slots[s] ? Token{*row.slots[s]} : kTokPad);
    }
  }
  return out;
}

VectorizedSequence Detokenize(const TokenStream& stream) {
  VectorizedSequence out;
  const auto& toks = stream.tokens;
  size_t i = 0;
  while (i < toks.size()) {
    const Token t = toks[i];
    const auto type = TypeOfToken(t);
    if (!type) Illegal(i, t, "expected a command type token");
    CommandRow row;
    row.type = *type;
    const std::vector<int> allowed = SlotsOfType(*type);
    const int width = allowed.empty() ? 0 : allowed.back() + 1;
    size_t j = i + 1;
    for (int s = 0; j < toks.size() && IsSlotToken(toks[j]); ++s, ++j) {
      if (s >= width) Illegal(j, toks[j], "surplus value for this command");
      if (toks[j] == kTokPad) continue;
      if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
        Illegal(j, toks[j], "value in a slot this command does not use");
      }
      row.slots[s] = static_cast<std::uint8_t>(toks[j]);
    }
    out.rows.push_back(row);
    if (*type == CommandType::EndSequence) {
      if (j != toks.size()) Illegal(j, toks[j], "token after end of sequence");
      return out;
    }
    i = j;
  }
  throw CadError(ErrorCode::TruncatedStream, "no end-of-sequence token");
}

std::string FormatTokenLine(const TokenStream& stream) {
  std::string out;
  for (size_t i = 0; i < stream.tokens.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(stream.tokens[i]);
  }
  return out;
}

TokenStream ParseTokenLine(std::string_view line) {
  TokenStream out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    Token t = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, t);
    if (ec != std::errc() || ptr != line.data() + j || t < 0 ||
        t >= kVocabularySize) {
      throw CadError(ErrorCode::ParseError,
                     "bad token \"" + std::string(line.substr(i, j - i)) + "\"");
    }
    out.tokens.push_back(t);
    i = j;
  }
  return out;
}

}  // namespace cadseq
