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

// Page link graph over kept pages, stored as two CSR adjacency arrays.
//
// On-disk layout (host byte order):
//   "WVLG" u32 version  u64 page_count  u64 edge_count
//   u64 page_id[page_count]  u64 out_offset[page_count + 1]  u32 out_target[edge_count]
// plus a JSON sidecar "<path>.json" with {page_count, edge_count}.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wikivec/error.hpp"
#include "wikivec/wiki/anchors.hpp"
#include "wikivec/wiki/corpus.hpp"
#include "wikivec/wiki/page.hpp"

namespace wikivec {

class LinkGraph {
 public:
  using Edge = std::pair<PageId, PageId>;

  LinkGraph() = default;

  /// Builds from a page set and directed edges. Self-edges, duplicates and
  /// edges touching unknown pages are dropped.
  static LinkGraph from_edges(std::vector<PageId> pages, std::vector<Edge> edges) {
    LinkGraph g;
    std::sort(pages.begin(), pages.end());
    pages.erase(std::unique(pages.begin(), pages.end()), pages.end());
    if (pages.size() > UINT32_MAX) throw Error("link graph too large");
    g.pages_ = std::move(pages);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> dense;
    dense.reserve(edges.size());
    for (const auto& [from, to] : edges) {
      if (from == to) continue;
      const auto a = g.index_of(from);
      const auto b = g.index_of(to);
      if (a && b) dense.emplace_back(*a, *b);
    }
    std::sort(dense.begin(), dense.end());
    dense.erase(std::unique(dense.begin(), dense.end()), dense.end());
    g.out_offsets_.assign(g.pages_.size() + 1, 0);
    for (const auto& e : dense) ++g.out_offsets_[e.first + 1];
    for (std::size_t i = 0; i < g.pages_.size(); ++i) g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.out_targets_.reserve(dense.size());
    for (const auto& e : dense) g.out_targets_.push_back(e.second);
    g.build_in_links();
    return g;
  }

  std::size_t page_count() const noexcept { return pages_.size(); }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }
  const std::vector<PageId>& pages() const noexcept { return pages_; }

  std::optional<std::uint32_t> index_of(PageId id) const {
    const auto it = std::lower_bound(pages_.begin(), pages_.end(), id);
    if (it == pages_.end() || *it != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - pages_.begin());
  }
  bool contains(PageId id) const { return index_of(id).has_value(); }
  PageId page_at(std::uint32_t i) const { return pages_.at(i); }

  /// Sorted dense neighbor indices.
  std::span<const std::uint32_t> out_links(std::uint32_t i) const {
    return {out_targets_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
  }
  std::span<const std::uint32_t> in_links(std::uint32_t i) const {
    return {in_sources_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
  }

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write graph: " + path.string());
    const auto put = [&](const void* p, std::size_t n) { out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); };
    const std::uint32_t version = kVersion;
    const std::uint64_t pc = page_count();
    const std::uint64_t ec = edge_count();
    put(kMagic, 4);
    put(&version, sizeof version);
    put(&pc, sizeof pc);
    put(&ec, sizeof ec);
    put(pages_.data(), pages_.size() * sizeof(PageId));
    put(out_offsets_.data(), out_offsets_.size() * sizeof(std::uint64_t));
    put(out_targets_.data(), out_targets_.size() * sizeof(std::uint32_t));
    out.close();
    if (!out) throw IoError("cannot write graph: " + path.string());

    std::ofstream side(sidecar_path(path), std::ios::trunc);
    if (!side) throw IoError("cannot write graph sidecar: " + sidecar_path(path).string());
    side << nlohmann::ordered_json{{"page_count", pc}, {"edge_count", ec}}.dump(2) << '\n';
    if (!side) throw IoError("cannot write graph sidecar: " + sidecar_path(path).string());
  }

  static LinkGraph load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open graph: " + path.string());
    const auto get = [&](void* p, std::size_t n) {
      in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
      if (!in) throw FormatError(path.string(), 0, "truncated link graph file");
    };
    char magic[4];
    std::uint32_t version = 0;
    std::uint64_t pc = 0;
    std::uint64_t ec = 0;
    get(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError(path.string(), 0, "not a link graph file");
    get(&version, sizeof version);
    if (version != kVersion) throw FormatError(path.string(), 0, "unsupported link graph version");
    get(&pc, sizeof pc);
    get(&ec, sizeof ec);
    const auto size = std::filesystem::file_size(path);
    if (pc > size || ec > size) throw FormatError(path.string(), 0, "corrupt link graph header");
    LinkGraph g;
    g.pages_.resize(pc);
    g.out_offsets_.resize(pc + 1);
    g.out_targets_.resize(ec);
    get(g.pages_.data(), pc * sizeof(PageId));
    get(g.out_offsets_.data(), (pc + 1) * sizeof(std::uint64_t));
    get(g.out_targets_.data(), ec * sizeof(std::uint32_t));
    const bool sorted = std::is_sorted(g.pages_.begin(), g.pages_.end());
    const bool offsets_ok = g.out_offsets_.front() == 0 && g.out_offsets_.back() == ec &&
                            std::is_sorted(g.out_offsets_.begin(), g.out_offsets_.end());
    const bool targets_ok = std::all_of(g.out_targets_.begin(), g.out_targets_.end(),
                                        [&](std::uint32_t t) { return t < pc; });
    if (!sorted || !offsets_ok || !targets_ok) throw FormatError(path.string(), 0, "corrupt link graph data");
    g.build_in_links();
    return g;
  }

  static std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".json");
  }

 private:
  static constexpr char kMagic[4] = {'W', 'V', 'L', 'G'};
  static constexpr std::uint32_t kVersion = 1;

  void build_in_links() {
    in_offsets_.assign(pages_.size() + 1, 0);
    for (const auto t : out_targets_) ++in_offsets_[t + 1];
    for (std::size_t i = 0; i < pages_.size(); ++i) in_offsets_[i + 1] += in_offsets_[i];
    in_sources_.assign(out_targets_.size(), 0);
    std::vector<std::uint64_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
    // Sources are visited in increasing order, so each in-list ends up sorted.
    for (std::uint32_t s = 0; s < pages_.size(); ++s) {
      for (const auto t : out_links(s)) in_sources_[fill[t]++] = s;
    }
  }

  std::vector<PageId> pages_;
  std::vector<std::uint64_t> out_offsets_{0};
  std::vector<std::uint32_t> out_targets_;
  std::vector<std::uint64_t> in_offsets_{0};
  std::vector<std::uint32_t> in_sources_;
};

/// One edge per explicit anchor from a kept page to a kept (redirect-resolved)
/// page; duplicates collapse, self-links are excluded.
inline LinkGraph build_link_graph(std::istream& dump, const DumpIndex& index) {
  std::vector<LinkGraph::Edge> edges;
  PageStream pages(dump);
  while (auto page = pages.next()) {
    if (!index.kept.contains(page->page_id)) continue;
    for (const auto& a : extract_anchors(page->wikitext)) {
      const auto target = index.redirects.resolve(a.target_title);
      if (target && index.kept.contains(*target)) edges.emplace_back(page->page_id, *target);
    }
  }
  return LinkGraph::from_edges(std::vector<PageId>(index.kept.begin(), index.kept.end()), std::move(edges));
}

inline LinkGraph build_link_graph(const std::filesystem::path& dump_path) {
  const DumpIndex index = index_dump(dump_path);
  std::ifstream dump(dump_path, std::ios::binary);
  if (!dump) throw IoError("cannot open dump: " + dump_path.string());
  return build_link_graph(dump, index);
}

}  // namespace wikivec
