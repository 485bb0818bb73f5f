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
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wikivec/text/tokenize.hpp"
#include "wikivec/wiki/markup.hpp"
#include "wikivec/wiki/page.hpp"

namespace wikivec {

/// Half-open byte range into a page's wikitext.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool overlaps(const Span& o) const { return begin < o.end && o.begin < end; }
  bool operator==(const Span&) const = default;
};

enum class Provenance { kExplicit, kHeuristic };

struct AnchorSpan {
  std::string target_title;
  std::string surface_text;
  Span span;
  Provenance provenance = Provenance::kExplicit;

  bool operator==(const AnchorSpan&) const = default;
};

/// Internal links of a page body. [[Target]] uses the target as surface,
/// [[Target|label]] uses the label, "#fragment" is removed from the target,
/// file/image/category/interlanguage links are not anchors. Unbalanced
/// brackets are skipped and counted in `warnings` when given.
inline std::vector<AnchorSpan> extract_anchors(std::string_view wikitext, std::size_t* warnings = nullptr) {
  MarkupLayout layout = scan_markup(wikitext);
  if (warnings != nullptr) *warnings += layout.warnings;
  std::vector<AnchorSpan> anchors;
  anchors.reserve(layout.links.size());
  for (auto& link : layout.links) {
    anchors.push_back({std::move(link.target), std::move(link.surface), {link.begin, link.end}, Provenance::kExplicit});
  }
  return anchors;
}

/// Adds one heuristic anchor to the page itself for every exact,
/// case-sensitive, whole-token mention of the page title in visible text
/// that does not overlap an existing anchor. Existing anchors are returned
/// untouched; the result is ordered by span.
inline std::vector<AnchorSpan> apply_title_heuristic(const PageRecord& page, std::vector<AnchorSpan> anchors) {
  const std::string_view text = page.wikitext;
  const std::string_view title = page.title;
  if (title.empty()) return anchors;

  const std::size_t explicit_count = anchors.size();
  const MarkupLayout layout = scan_markup(text);
  for (const TextRun& run : layout.text) {
    std::size_t from = run.begin;
    while (true) {
      const auto hit = text.substr(0, run.end).find(title, from);
      if (hit == std::string_view::npos) break;
      const Span span{hit, hit + title.size()};
      const bool whole_token = !joins_left(text, span.begin) && !joins_right(text, span.end);
      const bool free = std::none_of(anchors.begin(), anchors.begin() + static_cast<std::ptrdiff_t>(explicit_count),
                                     [&](const AnchorSpan& a) { return a.span.overlaps(span); });
      if (whole_token && free) {
        anchors.push_back({page.title, page.title, span, Provenance::kHeuristic});
        from = span.end;
      } else {
        from = hit + 1;
      }
    }
  }
  std::stable_sort(anchors.begin(), anchors.end(),
                   [](const AnchorSpan& a, const AnchorSpan& b) { return a.span.begin < b.span.begin; });
  return anchors;
}

}  // namespace wikivec
