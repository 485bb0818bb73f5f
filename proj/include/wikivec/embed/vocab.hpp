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
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wikivec/error.hpp"
#include "wikivec/vectors/vector_set.hpp"

namespace wikivec {

/// Calls `f(token)` for every whitespace-separated token of a corpus line.
template <typename F>
void for_each_field(std::string_view line, F&& f) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) f(line.substr(start, i - start));
  }
}

/// Token frequency table with dense, frequency-descending indices.
class Vocabulary {
 public:
  struct Entry {
    std::string token;
    std::uint64_t count = 0;
    bool operator==(const Entry&) const = default;
  };

  Vocabulary() = default;

  /// Builds from raw counts: drops entries below `min_count`, sorts by count
  /// descending with lexicographic tie-break.
  static Vocabulary from_counts(std::vector<Entry> counts, std::uint64_t min_count) {
    Vocabulary v;
    std::erase_if(counts, [&](const Entry& e) { return e.count < min_count; });
    std::sort(counts.begin(), counts.end(), [](const Entry& a, const Entry& b) {
      return a.count != b.count ? a.count > b.count : a.token < b.token;
    });
    v.entries_ = std::move(counts);
    v.index_.reserve(v.entries_.size());
    for (std::size_t i = 0; i < v.entries_.size(); ++i) {
      v.index_.emplace(v.entries_[i].token, static_cast<std::uint32_t>(i));
      v.total_ += v.entries_[i].count;
    }
    return v;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::optional<std::uint32_t> index_of(std::string_view token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Occurrences of retained tokens in the corpus.
  std::uint64_t total_tokens() const noexcept { return total_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::uint32_t, detail::StringHash, std::equal_to<>> index_;
  std::uint64_t total_ = 0;
};

/// Counts every whitespace-separated token (words and concept tokens alike).
inline Vocabulary build_vocab(std::istream& corpus, std::uint64_t min_count) {
  std::unordered_map<std::string, std::uint64_t, detail::StringHash, std::equal_to<>> counts;
  std::string line;
  while (std::getline(corpus, line)) {
    for_each_field(line, [&](std::string_view tok) {
      const auto it = counts.find(tok);
      if (it != counts.end()) {
        ++it->second;
      } else {
        counts.emplace(std::string(tok), 1);
      }
    });
  }
  if (corpus.bad()) throw IoError("read failed on corpus");
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(counts.size());
  for (auto& [token, n] : counts) entries.push_back({token, n});
  return Vocabulary::from_counts(std::move(entries), min_count);
}

inline Vocabulary build_vocab(const std::filesystem::path& corpus, std::uint64_t min_count) {
  std::ifstream in(corpus, std::ios::binary);
  if (!in) throw IoError("cannot open corpus: " + corpus.string());
  return build_vocab(in, min_count);
}

}  // namespace wikivec
