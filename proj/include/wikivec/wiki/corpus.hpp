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

// Two-pass corpus compilation: the first pass indexes titles, redirects and
// prune verdicts; the second renders every kept page to one corpus line.

#pragma once

#include <algorithm>
#include <array>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wikivec/error.hpp"
#include "wikivec/text/tokenize.hpp"
#include "wikivec/wiki/anchors.hpp"
#include "wikivec/wiki/page.hpp"
#include "wikivec/wiki/prune.hpp"
#include "wikivec/wiki/redirects.hpp"
#include "wikivec/wiki/render.hpp"

namespace wikivec {

/// Result of the first pass: everything the renderer needs to share.
struct DumpIndex {
  RedirectMap redirects;
  KeptSet kept;
  std::size_t pages_seen = 0;
  std::array<std::size_t, kPruneRuleCount> discarded{};
};

inline DumpIndex index_dump(std::istream& dump) {
  DumpIndex index;
  RedirectMapBuilder builder;
  PageStream pages(dump);
  while (auto page = pages.next()) {
    ++index.pages_seen;
    builder.add(*page);
    const PruneDecision decision = prune_page(*page);
    if (decision.kept()) {
      index.kept.insert(page->page_id);
    } else {
      ++index.discarded[static_cast<std::size_t>(*decision.rule)];
    }
  }
  index.redirects = std::move(builder).build();
  return index;
}

inline DumpIndex index_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dump: " + path.string());
  return index_dump(in);
}

struct IngestStats {
  std::size_t pages_seen = 0;
  std::size_t pages_kept = 0;
  std::size_t anchors_explicit = 0;
  std::size_t anchors_heuristic = 0;
  std::size_t tokens_emitted = 0;
  std::size_t redirect_cycles = 0;
  std::size_t redirects_dangling = 0;
  std::size_t markup_warnings = 0;
  std::array<std::size_t, kPruneRuleCount> discarded{};

  IngestStats& operator+=(const IngestStats& o) {
    pages_kept += o.pages_kept;
    anchors_explicit += o.anchors_explicit;
    anchors_heuristic += o.anchors_heuristic;
    tokens_emitted += o.tokens_emitted;
    markup_warnings += o.markup_warnings;
    return *this;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["pages_seen"] = pages_seen;
    j["pages_kept"] = pages_kept;
    j["anchors_explicit"] = anchors_explicit;
    j["anchors_heuristic"] = anchors_heuristic;
    j["tokens_emitted"] = tokens_emitted;
    j["redirect_cycles"] = redirect_cycles;
    j["redirects_dangling"] = redirects_dangling;
    j["markup_warnings"] = markup_warnings;
    auto& d = j["discarded"] = nlohmann::ordered_json::object();
    for (std::size_t r = 0; r < kPruneRuleCount; ++r) d[std::string(kPruneRuleNames[r])] = discarded[r];
    return j;
  }
};

/// (lowercased surface, target page) -> number of explicit anchors.
using AnchorStats = std::map<std::pair<std::string, PageId>, std::size_t>;

inline void merge_into(AnchorStats& into, const AnchorStats& from) {
  for (const auto& [key, n] : from) into[key] += n;
}

/// Renders one page against a finished index. Returns nullopt for pruned
/// pages. Explicit anchors that resolve to kept pages are tallied in
/// `anchor_stats` when given.
inline std::optional<CorpusLine> process_page(const PageRecord& page, const DumpIndex& index, CorpusMode mode,
                                              IngestStats& stats, AnchorStats* anchor_stats = nullptr) {
  if (!index.kept.contains(page.page_id)) return std::nullopt;
  std::vector<AnchorSpan> anchors = extract_anchors(page.wikitext, &stats.markup_warnings);
  const std::size_t explicit_count = anchors.size();
  if (anchor_stats != nullptr) {
    for (const auto& a : anchors) {
      const auto target = index.redirects.resolve(a.target_title);
      if (target && index.kept.contains(*target)) ++(*anchor_stats)[{normalize_surface(a.surface_text), *target}];
    }
  }
  if (mode == CorpusMode::kHeuristic) anchors = apply_title_heuristic(page, std::move(anchors));

  CorpusLine line = render_line(page, anchors, index.redirects, index.kept, mode);
  ++stats.pages_kept;
  stats.anchors_explicit += explicit_count;
  stats.anchors_heuristic += anchors.size() - explicit_count;
  stats.tokens_emitted += line.tokens.size();
  return line;
}

struct CorpusOptions {
  CorpusMode mode = CorpusMode::kStandard;
  unsigned workers = 1;
  bool ordered = false;  // document order regardless of worker count
};

struct IngestResult {
  IngestStats stats;
  AnchorStats anchor_stats;
};

namespace detail {

// Bounded multi-consumer queue of page batches.
class BatchQueue {
 public:
  explicit BatchQueue(std::size_t capacity) : capacity_(capacity) {}

  void push(std::vector<PageRecord> batch) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return batches_.size() < capacity_ || aborted_; });
    if (aborted_) return;
    batches_.push_back(std::move(batch));
    not_empty_.notify_one();
  }

  std::optional<std::vector<PageRecord>> pop() {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !batches_.empty() || closed_ || aborted_; });
    if (aborted_ || batches_.empty()) return std::nullopt;
    auto batch = std::move(batches_.front());
    batches_.erase(batches_.begin());
    not_full_.notify_one();
    return batch;
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }

  void abort() {
    std::lock_guard lock(mu_);
    aborted_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::vector<std::vector<PageRecord>> batches_;
  std::size_t capacity_;
  bool closed_ = false;
  bool aborted_ = false;
};

}  // namespace detail

/// Second pass: renders every kept page of `dump` to `out`, one line each.
/// With one worker or `ordered`, lines follow document order and the output
/// is byte-identical across runs.
inline IngestResult build_corpus(std::istream& dump, const DumpIndex& index, std::ostream& out,
                                 const CorpusOptions& options = {}) {
  IngestResult result;
  result.stats.pages_seen = index.pages_seen;
  result.stats.redirect_cycles = index.redirects.diagnostics().cycles;
  result.stats.redirects_dangling = index.redirects.diagnostics().dangling;
  result.stats.discarded = index.discarded;

  PageStream pages(dump);
  const auto write_line = [&](const CorpusLine& line) {
    out << line.to_string() << '\n';
    if (!out) throw IoError("write failed on corpus output");
  };

  if (options.workers <= 1 || options.ordered) {
    while (auto page = pages.next()) {
      if (auto line = process_page(*page, index, options.mode, result.stats, &result.anchor_stats)) write_line(*line);
    }
    return result;
  }

  constexpr std::size_t kBatch = 64;
  detail::BatchQueue queue(options.workers * 4);
  std::mutex out_mu;
  std::exception_ptr failure;
  std::vector<IngestResult> partial(options.workers);
  std::vector<std::thread> threads;
  threads.reserve(options.workers);
  for (unsigned w = 0; w < options.workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        std::string buffer;
        while (auto batch = queue.pop()) {
          buffer.clear();
          for (const auto& page : *batch) {
            if (auto line = process_page(page, index, options.mode, partial[w].stats, &partial[w].anchor_stats)) {
              buffer += line->to_string();
              buffer += '\n';
            }
          }
          std::lock_guard lock(out_mu);
          out << buffer;
          if (!out) throw IoError("write failed on corpus output");
        }
      } catch (...) {
        std::lock_guard lock(out_mu);
        if (!failure) failure = std::current_exception();
        queue.abort();
      }
    });
  }
  try {
    std::vector<PageRecord> batch;
    while (auto page = pages.next()) {
      if (!index.kept.contains(page->page_id)) continue;
      batch.push_back(std::move(*page));
      if (batch.size() == kBatch) queue.push(std::exchange(batch, {}));
    }
    if (!batch.empty()) queue.push(std::move(batch));
    queue.close();
  } catch (...) {
    queue.abort();
    for (auto& t : threads) t.join();
    throw;
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  for (const auto& p : partial) {
    result.stats += p.stats;
    merge_into(result.anchor_stats, p.anchor_stats);
  }
  return result;
}

/// Path-level entry point: indexes the dump, then writes the corpus file.
inline IngestResult build_corpus(const std::filesystem::path& dump_path, const std::filesystem::path& out_path,
                                 const CorpusOptions& options = {}) {
  const DumpIndex index = index_dump(dump_path);
  std::ifstream dump(dump_path, std::ios::binary);
  if (!dump) throw IoError("cannot open dump: " + dump_path.string());
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write corpus: " + out_path.string());
  IngestResult result = build_corpus(dump, index, out, options);
  out.close();
  if (!out) throw IoError("cannot write corpus: " + out_path.string());
  return result;
}

/// Anchor statistics as TSV lines "surface<TAB>page_id<TAB>count".
inline void write_anchor_stats(const AnchorStats& stats, std::ostream& out) {
  for (const auto& [key, n] : stats) out << key.first << '\t' << key.second << '\t' << n << '\n';
}

}  // namespace wikivec
