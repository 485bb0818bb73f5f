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

#include <string>
#include <string_view>
#include <vector>

#include "wikivec/text/utf8.hpp"

namespace wikivec {

/// Plain-text word tokenizer used for corpus rendering.
///
/// Lowercases, splits on whitespace and punctuation, and keeps an ASCII
/// hyphen only when it sits between two token characters ("state-of-the-art"
/// stays one token, "-foo-" becomes "foo"). Digits are ordinary token
/// characters.
template <typename Sink>
void for_each_token(std::string_view text, Sink&& sink) {
  std::string current;
  for (std::size_t i = 0; i < text.size();) {
    const auto d = utf8::decode(text, i);
    if (!utf8::is_separator(d.cp)) {
      utf8::append(current, utf8::to_lower(d.cp));
    } else if (d.cp == '-' && !current.empty() && current.back() != '-' && i + 1 < text.size() &&
               !utf8::is_separator(utf8::decode(text, i + 1).cp)) {
      current += '-';
    } else if (!current.empty()) {
      sink(std::move(current));
      current.clear();
    }
    i += d.length;
  }
  if (!current.empty()) sink(std::move(current));
}

inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for_each_token(text, [&](std::string&& t) { out.push_back(std::move(t)); });
  return out;
}

/// True when a token character (or a joining hyphen) touches position `pos`
/// from the left, i.e. `pos` is not a token start boundary.
inline bool joins_left(std::string_view text, std::size_t pos) {
  if (pos == 0) return false;
  const std::size_t p = utf8::previous_start(text, pos);
  const auto d = utf8::decode(text, p);
  if (!utf8::is_separator(d.cp)) return true;
  if (d.cp == '-' && p > 0) {
    return !utf8::is_separator(utf8::decode(text, utf8::previous_start(text, p)).cp);
  }
  return false;
}

/// True when a token character (or a joining hyphen) touches `pos` from the
/// right, i.e. `pos` is not a token end boundary.
inline bool joins_right(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return false;
  const auto d = utf8::decode(text, pos);
  if (!utf8::is_separator(d.cp)) return true;
  if (d.cp == '-' && pos + 1 < text.size()) return !utf8::is_separator(utf8::decode(text, pos + 1).cp);
  return false;
}

/// Lowercased, trimmed surface form with internal whitespace collapsed to a
/// single space. Key for most-frequent-sense lookups.
inline std::string normalize_surface(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (std::size_t i = 0; i < s.size();) {
    const auto d = utf8::decode(s, i);
    if (utf8::is_space(d.cp)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      if (d.cp == utf8::kReplacement) {
        out.append(s.substr(i, d.length));
      } else {
        utf8::append(out, utf8::to_lower(d.cp));
      }
    }
    i += d.length;
  }
  return out;
}

}  // namespace wikivec
