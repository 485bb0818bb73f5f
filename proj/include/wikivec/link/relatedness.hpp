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

// Milne-Witten link relatedness. For link sets A and B among N pages:
//
//   r = 1 - (log max(|A|,|B|) - log |A n B|) / (log N - log min(|A|,|B|))
//
// clamped to [0, 1], and 0 when either set or the overlap is empty. The
// in-link and out-link scores are averaged.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "wikivec/error.hpp"
#include "wikivec/eval/sense_index.hpp"
#include "wikivec/eval/similarity.hpp"
#include "wikivec/link/graph.hpp"

namespace wikivec {

/// One side of the measure from set sizes alone.
inline double mw_relatedness(std::size_t a, std::size_t b, std::size_t overlap, std::size_t n) {
  if (a == 0 || b == 0 || overlap == 0) return 0.0;
  const double hi = static_cast<double>(std::max(a, b));
  const double lo = static_cast<double>(std::min(a, b));
  const double num = std::log(hi) - std::log(static_cast<double>(overlap));
  if (num <= 0.0) return 1.0;
  const double den = std::log(static_cast<double>(n)) - std::log(lo);
  if (den <= 0.0) return 0.0;
  return std::clamp(1.0 - num / den, 0.0, 1.0);
}

inline std::size_t sorted_overlap(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n, ++i, ++j;
    }
  }
  return n;
}

/// Average of the in-link and out-link relatedness of pages a and b.
inline double link_similarity(const LinkGraph& graph, PageId a, PageId b) {
  const auto ia = graph.index_of(a);
  const auto ib = graph.index_of(b);
  if (!ia) throw Error("unknown page id " + std::to_string(a));
  if (!ib) throw Error("unknown page id " + std::to_string(b));
  const std::size_t n = graph.page_count();
  const auto side = [&](std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
    return mw_relatedness(x.size(), y.size(), sorted_overlap(x, y), n);
  };
  const double in = side(graph.in_links(*ia), graph.in_links(*ib));
  const double out = side(graph.out_links(*ia), graph.out_links(*ib));
  return 0.5 * (in + out);
}

/// Similarity-protocol adapter: surfaces are mapped to pages by the sense
/// index, and unmapped or unknown pages count as not found.
class LinkScorer final : public PairScorer {
 public:
  LinkScorer(const LinkGraph& graph, const SenseIndex& senses, std::string name = "links")
      : graph_(graph), senses_(senses), name_(std::move(name)) {}

  std::string name() const override { return name_; }

  std::optional<double> score(std::string_view first, std::string_view second) const override {
    const auto a = senses_.lookup(first);
    const auto b = senses_.lookup(second);
    if (!a || !b || !graph_.contains(a->page_id) || !graph_.contains(b->page_id)) return std::nullopt;
    return link_similarity(graph_, a->page_id, b->page_id);
  }

 private:
  const LinkGraph& graph_;
  const SenseIndex& senses_;
  std::string name_;
};

}  // namespace wikivec
