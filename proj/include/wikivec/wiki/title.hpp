// Copyright 2026 The wikivec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

#include "wikivec/wiki/page.hpp"

namespace wikivec {

/// Canonical lookup key for a page title or link target: underscores become
/// spaces, whitespace is trimmed and collapsed, a leading ':' is dropped and
/// the first ASCII letter is uppercased (MediaWiki first-letter rule).
inline std::string normalize_title(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (c == '_' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (out.empty() && c == ':') continue;
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

inline constexpr std::string_view kConceptPrefix = "wiki_";

/// Corpus spelling of a concept token.
inline std::string concept_token(PageId id) { return std::string(kConceptPrefix) + std::to_string(id); }

/// Inverse of concept_token; nullopt for ordinary word tokens.
inline std::optional<PageId> parse_concept_token(std::string_view token) {
  if (!token.starts_with(kConceptPrefix)) return std::nullopt;
  token.remove_prefix(kConceptPrefix.size());
  if (token.empty() || token.front() == '0') return std::nullopt;
  PageId id = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return id;
}

}  // namespace wikivec
