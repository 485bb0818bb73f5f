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

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "wikivec/error.hpp"
#include "wikivec/text/tokenize.hpp"
#include "wikivec/wiki/anchors.hpp"
#include "wikivec/wiki/markup.hpp"
#include "wikivec/wiki/page.hpp"
#include "wikivec/wiki/redirects.hpp"
#include "wikivec/wiki/title.hpp"

namespace wikivec {

enum class CorpusMode { kStandard, kHeuristic, kAnchorsOnly };

inline std::string_view mode_name(CorpusMode mode) {
  switch (mode) {
    case CorpusMode::kStandard: return "standard";
    case CorpusMode::kHeuristic: return "heuristic";
    case CorpusMode::kAnchorsOnly: return "anchors-only";
  }
  return "?";
}

inline CorpusMode parse_mode(std::string_view name) {
  if (name == "standard") return CorpusMode::kStandard;
  if (name == "heuristic") return CorpusMode::kHeuristic;
  if (name == "anchors-only" || name == "anchors_only") return CorpusMode::kAnchorsOnly;
  throw Error("unknown corpus mode: " + std::string(name));
}

struct ConceptToken {
  PageId id = 0;
  bool operator==(const ConceptToken&) const = default;
};

using WordToken = std::string;
using CorpusToken = std::variant<WordToken, ConceptToken>;

/// Token sequence for one page.
struct CorpusLine {
  PageId page_id = 0;
  std::vector<CorpusToken> tokens;

  std::size_t concept_count() const {
    return static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), [](const CorpusToken& t) {
      return std::holds_alternative<ConceptToken>(t);
    }));
  }

  /// Corpus file spelling: tokens joined by single spaces, concepts as wiki_<id>.
  std::string to_string() const {
    std::string out;
    for (const auto& token : tokens) {
      if (!out.empty()) out += ' ';
      if (const auto* w = std::get_if<WordToken>(&token)) {
        out += *w;
      } else {
        out += concept_token(std::get<ConceptToken>(token).id);
      }
    }
    return out;
  }
};

using KeptSet = std::unordered_set<PageId>;

/// Renders a page to corpus tokens.
///
/// Visible text is tokenized into words. Each anchor whose redirect-resolved
/// target is kept becomes one concept token; any other anchor contributes its
/// surface words. In anchors-only mode plain text is dropped and so are
/// anchors that do not resolve to a kept page, leaving concept tokens only.
/// Heuristic anchors always point at the page itself.
inline CorpusLine render_line(const PageRecord& page, const std::vector<AnchorSpan>& anchors,
                              const RedirectMap& redirects, const KeptSet& kept, CorpusMode mode) {
  const std::string_view text = page.wikitext;
  const bool keep_text = mode != CorpusMode::kAnchorsOnly;

  std::vector<const AnchorSpan*> sorted;
  sorted.reserve(anchors.size());
  for (const auto& a : anchors) sorted.push_back(&a);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const AnchorSpan* a, const AnchorSpan* b) { return a->span.begin < b->span.begin; });

  struct Piece {
    std::size_t begin;
    std::size_t end;
    const AnchorSpan* anchor;  // null for plain text
  };
  std::vector<Piece> pieces;
  pieces.reserve(sorted.size() * 2 + 8);
  for (const auto* a : sorted) pieces.push_back({a->span.begin, a->span.end, a});

  const MarkupLayout layout = scan_markup(text);
  std::size_t first = 0;
  for (const TextRun& run : layout.text) {
    while (first < sorted.size() && sorted[first]->span.end <= run.begin) ++first;
    std::size_t cursor = run.begin;
    for (std::size_t k = first; k < sorted.size() && sorted[k]->span.begin < run.end; ++k) {
      const Span& s = sorted[k]->span;
      if (s.begin > cursor) pieces.push_back({cursor, s.begin, nullptr});
      cursor = std::max(cursor, s.end);
    }
    if (cursor < run.end) pieces.push_back({cursor, run.end, nullptr});
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.begin < b.begin; });

  CorpusLine line;
  line.page_id = page.page_id;
  const auto push_words = [&](std::string_view s) {
    for_each_token(s, [&](std::string&& t) { line.tokens.emplace_back(std::in_place_type<WordToken>, std::move(t)); });
  };
  for (const Piece& piece : pieces) {
    if (piece.anchor == nullptr) {
      if (keep_text) push_words(text.substr(piece.begin, piece.end - piece.begin));
      continue;
    }
    const AnchorSpan& a = *piece.anchor;
    const std::optional<PageId> target =
        a.provenance == Provenance::kHeuristic ? std::optional<PageId>(page.page_id) : redirects.resolve(a.target_title);
    if (target && kept.contains(*target)) {
      line.tokens.emplace_back(ConceptToken{*target});
    } else if (keep_text) {
      push_words(a.surface_text);
    }
  }
  return line;
}

}  // namespace wikivec
