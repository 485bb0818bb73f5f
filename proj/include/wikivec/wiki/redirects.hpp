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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wikivec/wiki/page.hpp"
#include "wikivec/wiki/title.hpp"

namespace wikivec {

struct RedirectDiagnostics {
  std::size_t cycles = 0;    // distinct redirect cycles dropped
  std::size_t dangling = 0;  // redirects whose chain ends at a missing title
};

/// Title -> canonical (non-redirect) page id, with every redirect chain
/// collapsed. Immutable once built; safe to share across threads.
class RedirectMap {
 public:
  /// Page id a link target ultimately points at, or nullopt when the title
  /// is unknown, dangling or part of a cycle.
  std::optional<PageId> resolve(std::string_view title) const {
    const auto it = by_title_.find(normalize_title(title));
    if (it == by_title_.end()) return std::nullopt;
    return it->second;
  }

  /// Canonical id of a page id: identity for articles, the collapsed target
  /// for redirect pages.
  std::optional<PageId> canonical(PageId id) const {
    if (const auto it = redirect_ids_.find(id); it != redirect_ids_.end()) return it->second;
    if (article_ids_.contains(id)) return id;
    return std::nullopt;
  }

  /// Number of redirect titles that resolved to an article.
  std::size_t redirect_count() const { return redirect_ids_.size(); }
  const RedirectDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  friend class RedirectMapBuilder;

  std::unordered_map<std::string, PageId> by_title_;
  std::unordered_map<PageId, PageId> redirect_ids_;
  std::unordered_set<PageId> article_ids_;
  RedirectDiagnostics diagnostics_;
};

/// Accumulates titles during a pass over the dump, then collapses chains.
class RedirectMapBuilder {
 public:
  void add(const PageRecord& page) {
    auto key = normalize_title(page.title);
    if (page.is_redirect()) {
      redirects_.try_emplace(std::move(key), Pending{normalize_title(*page.redirect_target), page.page_id});
    } else {
      articles_.try_emplace(std::move(key), page.page_id);
    }
  }

  RedirectMap build() && {
    RedirectMap map;
    for (const auto& [title, id] : articles_) {
      map.by_title_.emplace(title, id);
      map.article_ids_.insert(id);
    }

    enum class State { kUnvisited, kActive, kResolved, kFailed };
    std::unordered_map<std::string_view, std::pair<State, PageId>> state;
    state.reserve(redirects_.size());
    for (const auto& [title, pending] : redirects_) state.emplace(title, std::pair{State::kUnvisited, PageId{0}});

    std::vector<std::string_view> path;
    for (const auto& [start, unused] : redirects_) {
      if (state.at(start).first != State::kUnvisited) continue;
      path.clear();
      std::string_view cur = start;
      std::optional<PageId> result;
      bool dangling = false;
      while (true) {
        if (const auto art = articles_.find(std::string(cur)); art != articles_.end()) {
          result = art->second;
          break;
        }
        const auto st = state.find(cur);
        if (st == state.end()) {
          dangling = true;
          break;
        }
        auto& [s, id] = st->second;
        if (s == State::kResolved) {
          result = id;
          break;
        }
        if (s == State::kFailed) break;
        if (s == State::kActive) {
          ++map.diagnostics_.cycles;
          break;
        }
        s = State::kActive;
        path.push_back(cur);
        cur = redirects_.find(std::string(cur))->second.target;
      }
      for (const auto node : path) {
        auto& entry = state.at(node);
        if (result) {
          entry = {State::kResolved, *result};
          map.by_title_.emplace(std::string(node), *result);
          map.redirect_ids_.emplace(redirects_.find(std::string(node))->second.page_id, *result);
        } else {
          entry = {State::kFailed, 0};
          if (dangling) ++map.diagnostics_.dangling;
        }
      }
    }
    return map;
  }

 private:
  struct Pending {
    std::string target;
    PageId page_id;
  };
  std::unordered_map<std::string, PageId> articles_;
  std::unordered_map<std::string, Pending> redirects_;
};

/// Builds the redirect map from a full pass over `pages`.
template <typename Range>
RedirectMap build_redirect_map(Range&& pages) {
  RedirectMapBuilder builder;
  for (const PageRecord& page : pages) builder.add(page);
  return std::move(builder).build();
}

}  // namespace wikivec
