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

// Page pruning: decides which dump pages become concepts.

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "wikivec/wiki/page.hpp"

namespace wikivec {

/// Pruning rules, in evaluation order. The first matching rule wins.
enum class PruneRule {
  kRedirectTag,
  kCategoryPrefix,
  kFilePrefix,
  kTemplatePrefix,
  kDisambiguation,
  kPortalPrefix,
  kDraftPrefix,
  kMediaWikiPrefix,
  kListOfPrefix,
  kWikipediaPrefix,
  kTimedTextPrefix,
  kHelpPrefix,
  kBookPrefix,
  kModulePrefix,
  kTopicPrefix,
};

inline constexpr std::size_t kPruneRuleCount = 15;

inline constexpr std::array<std::string_view, kPruneRuleCount> kPruneRuleNames = {
    "redirect-tag",    "category-prefix",  "file-prefix",      "template-prefix", "disambiguation",
    "portal-prefix",   "draft-prefix",     "mediawiki-prefix", "list-of-prefix",  "wikipedia-prefix",
    "timedtext-prefix", "help-prefix",     "book-prefix",      "module-prefix",   "topic-prefix",
};

inline std::string_view rule_name(PruneRule rule) { return kPruneRuleNames[static_cast<std::size_t>(rule)]; }

inline std::optional<PruneRule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPruneRuleCount; ++i) {
    if (kPruneRuleNames[i] == name) return static_cast<PruneRule>(i);
  }
  return std::nullopt;
}

struct PruneDecision {
  enum class Verdict { kKeep, kDiscard };

  Verdict verdict = Verdict::kKeep;
  std::optional<PruneRule> rule;  // set iff verdict == kDiscard

  static PruneDecision keep() { return {}; }
  static PruneDecision discard(PruneRule r) { return {Verdict::kDiscard, r}; }
  bool kept() const { return verdict == Verdict::kKeep; }
  bool operator==(const PruneDecision&) const = default;
};

/// Applies the pruning rules to one page. Title prefixes match
/// case-sensitively at position 0; the disambiguation rule also inspects the
/// body for "may refer to:" / "may also refer to".
inline PruneDecision prune_page(const PageRecord& page) {
  using R = PruneRule;
  const std::string_view title = page.title;
  const auto prefix = [&](std::string_view p) { return title.starts_with(p); };

  if (page.is_redirect()) return PruneDecision::discard(R::kRedirectTag);
  if (prefix("Category:")) return PruneDecision::discard(R::kCategoryPrefix);
  if (prefix("File:")) return PruneDecision::discard(R::kFilePrefix);
  if (prefix("Template:")) return PruneDecision::discard(R::kTemplatePrefix);
  if (title.find("(disambiguation)") != std::string_view::npos ||
      page.wikitext.find("may refer to:") != std::string::npos ||
      page.wikitext.find("may also refer to") != std::string::npos) {
    return PruneDecision::discard(R::kDisambiguation);
  }
  if (prefix("Portal:")) return PruneDecision::discard(R::kPortalPrefix);
  if (prefix("Draft:")) return PruneDecision::discard(R::kDraftPrefix);
  if (prefix("MediaWiki:")) return PruneDecision::discard(R::kMediaWikiPrefix);
  if (prefix("List of")) return PruneDecision::discard(R::kListOfPrefix);
  if (prefix("Wikipedia:")) return PruneDecision::discard(R::kWikipediaPrefix);
  if (prefix("TimedText:")) return PruneDecision::discard(R::kTimedTextPrefix);
  if (prefix("Help:")) return PruneDecision::discard(R::kHelpPrefix);
  if (prefix("Book:")) return PruneDecision::discard(R::kBookPrefix);
  if (prefix("Module:")) return PruneDecision::discard(R::kModulePrefix);
  if (prefix("Topic:")) return PruneDecision::discard(R::kTopicPrefix);
  return PruneDecision::keep();
}

}  // namespace wikivec
