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
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "wikivec/error.hpp"
#include "wikivec/vectors/vector_set.hpp"

namespace wikivec {

template <typename A, typename B>
double dot(std::span<A> a, std::span<B> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return s;
}

template <typename A>
double norm(std::span<A> a) {
  return std::sqrt(dot(a, a));
}

/// Cosine similarity; 0 when either side is the zero vector.
template <typename A, typename B>
double cosine(std::span<A> a, std::span<B> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

struct Neighbor {
  std::string token;
  double cosine = 0.0;
  bool operator==(const Neighbor&) const = default;
};

using TokenSet = std::unordered_set<std::string, detail::StringHash, std::equal_to<>>;

struct NearestOptions {
  std::size_t k = 10;
  const TokenSet* exclude = nullptr;
  std::optional<std::size_t> max_rank;  // only rows with frequency rank below this
};

/// Exhaustive top-k cosine search. Ties are broken by token order. Stored
/// zero vectors are skipped.
inline std::vector<Neighbor> nearest(const VectorSet& set, std::span<const double> query, const NearestOptions& opts) {
  if (opts.k == 0) throw Error("k must be at least 1");
  if (query.size() != set.dim()) {
    throw Error("query has " + std::to_string(query.size()) + " values, expected " + std::to_string(set.dim()));
  }
  const double qn = norm(query);
  if (qn == 0.0) throw Error("zero-norm query vector");

  struct Scored {
    double cos;
    std::size_t row;
  };
  const auto better = [&](const Scored& a, const Scored& b) {
    if (a.cos != b.cos) return a.cos > b.cos;
    return set.token(a.row) < set.token(b.row);
  };
  std::vector<Scored> heap;  // worst candidate at front
  heap.reserve(opts.k + 1);
  std::size_t limit = set.size();
  if (opts.max_rank) limit = std::min(limit, *opts.max_rank);
  for (std::size_t i = 0; i < limit; ++i) {
    if (opts.exclude != nullptr && opts.exclude->contains(set.token(i))) continue;
    const auto row = set.row(i);
    const double rn = set.norm(i);
    if (rn == 0.0) continue;
    const Scored s{dot(query, row) / (qn * rn), i};
    if (heap.size() < opts.k) {
      heap.push_back(s);
      std::push_heap(heap.begin(), heap.end(), better);
    } else if (better(s, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), better);
      heap.back() = s;
      std::push_heap(heap.begin(), heap.end(), better);
    }
  }
  std::sort(heap.begin(), heap.end(), better);
  std::vector<Neighbor> out;
  out.reserve(heap.size());
  for (const auto& s : heap) out.push_back({set.token(s.row), s.cos});
  return out;
}

inline std::vector<Neighbor> nearest(const VectorSet& set, std::span<const float> query, const NearestOptions& opts) {
  std::vector<double> q(query.begin(), query.end());
  return nearest(set, std::span<const double>(q), opts);
}

/// Neighbors of a stored token, excluding the token itself.
inline std::vector<Neighbor> nearest_to_token(const VectorSet& set, std::string_view token, std::size_t k) {
  const TokenSet exclude{std::string(token)};
  return nearest(set, set[token], {.k = k, .exclude = &exclude, .max_rank = std::nullopt});
}

/// b - a + c, accumulated in double.
inline std::vector<double> analogy_vector(const VectorSet& set, std::size_t a, std::size_t b, std::size_t c) {
  std::vector<double> q(set.dim());
  const auto va = set.row(a);
  const auto vb = set.row(b);
  const auto vc = set.row(c);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = static_cast<double>(vb[i]) - static_cast<double>(va[i]) + static_cast<double>(vc[i]);
  }
  return q;
}

/// Answer to "a is to b as c is to ?": the token outside {a, b, c} whose
/// vector has the largest cosine with b - a + c. Returns nullopt when no
/// candidate remains or the query vector is zero.
inline std::optional<Neighbor> try_analogy(const VectorSet& set, std::string_view a, std::string_view b,
                                           std::string_view c, std::optional<std::size_t> max_rank = std::nullopt) {
  std::vector<std::string> missing;
  const auto ia = set.index_of(a);
  const auto ib = set.index_of(b);
  const auto ic = set.index_of(c);
  if (!ia) missing.emplace_back(a);
  if (!ib) missing.emplace_back(b);
  if (!ic) missing.emplace_back(c);
  if (!missing.empty()) throw NotInVocabulary(std::move(missing));
  const auto q = analogy_vector(set, *ia, *ib, *ic);
  if (norm(std::span<const double>(q)) == 0.0) return std::nullopt;
  const TokenSet exclude{std::string(a), std::string(b), std::string(c)};
  auto best = nearest(set, std::span<const double>(q), {.k = 1, .exclude = &exclude, .max_rank = max_rank});
  if (best.empty()) return std::nullopt;
  return std::move(best.front());
}

inline std::string analogy_query(const VectorSet& set, std::string_view a, std::string_view b, std::string_view c,
                                 std::optional<std::size_t> max_rank = std::nullopt) {
  auto best = try_analogy(set, a, b, c, max_rank);
  if (!best) throw Error("analogy has no answer: no candidate token or zero query vector");
  return std::move(best->token);
}

}  // namespace wikivec
