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
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wikivec/error.hpp"
#include "wikivec/text/tokenize.hpp"
#include "wikivec/wiki/page.hpp"
#include "wikivec/wiki/title.hpp"

namespace wikivec {

/// Surface form -> most frequent anchor target.
class SenseIndex {
 public:
  struct Sense {
    PageId page_id = 0;
    std::size_t count = 0;
    bool operator==(const Sense&) const = default;
  };

  /// Adds `count` anchors from `surface` to `target`. Surfaces are
  /// normalized (lowercased, whitespace collapsed) before aggregation.
  void add(std::string_view surface, PageId target, std::size_t count = 1) {
    if (count == 0) return;
    std::string key = normalize_surface(surface);
    const std::size_t n = counts_[{key, target}] += count;
    // Counts only grow, so the running argmax stays exact.
    auto [it, inserted] = best_.try_emplace(std::move(key), Sense{target, n});
    Sense& best = it->second;
    if (!inserted && (n > best.count || (n == best.count && target < best.page_id))) best = Sense{target, n};
  }

  /// Most frequent target of a surface form; ties go to the smaller id.
  std::optional<Sense> lookup(std::string_view surface) const {
    const auto it = best_.find(normalize_surface(surface));
    if (it == best_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return best_.size(); }

  /// Corpus token for a surface: its concept token when mapped, otherwise
  /// the lowercased surface itself.
  std::string map_token(std::string_view surface) const {
    if (const auto sense = lookup(surface)) return concept_token(sense->page_id);
    return normalize_surface(surface);
  }

 private:
  std::map<std::pair<std::string, PageId>, std::size_t> counts_;
  std::unordered_map<std::string, Sense> best_;
};

/// Aggregates (surface, target) anchor observations.
template <typename Range>
SenseIndex build_sense_index(const Range& anchor_stats) {
  SenseIndex index;
  for (const auto& [surface, target] : anchor_stats) index.add(surface, target);
  return index;
}

/// Reads the "surface<TAB>page_id<TAB>count" file written by ingest.
inline SenseIndex load_sense_index(std::istream& in, const std::string& name = "<stream>") {
  SenseIndex index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw FormatError(name, line_no, "expected surface<TAB>page_id<TAB>count");
    PageId id = 0;
    std::size_t count = 0;
    const char* p = line.data();
    const auto r1 = std::from_chars(p + t1 + 1, p + t2, id);
    const auto r2 = std::from_chars(p + t2 + 1, p + line.size(), count);
    if (r1.ec != std::errc() || r1.ptr != p + t2 || r2.ec != std::errc() || r2.ptr != p + line.size()) {
      throw FormatError(name, line_no, "bad page id or count");
    }
    index.add(std::string_view(line).substr(0, t1), id, count);
  }
  if (in.bad()) throw IoError("read failed: " + name);
  return index;
}

inline SenseIndex load_sense_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open sense index: " + path.string());
  return load_sense_index(in, path.string());
}

}  // namespace wikivec
