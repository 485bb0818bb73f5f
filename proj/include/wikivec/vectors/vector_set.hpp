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

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikivec/error.hpp"

namespace wikivec {

namespace detail {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

}  // namespace detail

/// Token -> dense float vector table with rows stored contiguously in
/// insertion order. When ranked, a token's frequency rank is its row index.
class VectorSet {
 public:
  VectorSet() = default;
  explicit VectorSet(std::size_t dim, bool ranked = true) : dim_(dim), ranked_(ranked) {
    if (dim == 0) throw Error("vector dimensionality must be at least 1");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  void reserve(std::size_t n) {
    tokens_.reserve(n);
    data_.reserve(n * dim_);
    index_.reserve(n);
    norms_.reserve(n);
  }

  /// Appends a row. Duplicate tokens, wrong lengths and non-finite values are
  /// rejected.
  void add(std::string token, std::span<const float> values) {
    if (values.size() != dim_) {
      throw Error("vector for '" + token + "' has " + std::to_string(values.size()) + " values, expected " +
                  std::to_string(dim_));
    }
    for (const float x : values) {
      if (!std::isfinite(x)) throw Error("non-finite value in vector for '" + token + "'");
    }
    if (index_.contains(token)) throw Error("duplicate token '" + token + "'");
    index_.emplace(token, tokens_.size());
    tokens_.push_back(std::move(token));
    data_.insert(data_.end(), values.begin(), values.end());
    double sq = 0.0;
    for (const float x : values) sq += static_cast<double>(x) * x;
    norms_.push_back(std::sqrt(sq));
  }

  std::optional<std::size_t> index_of(std::string_view token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view token) const { return index_.find(token) != index_.end(); }

  const std::string& token(std::size_t i) const { return tokens_.at(i); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  std::span<const float> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  /// Euclidean norm of row i, computed in double at insertion.
  double norm(std::size_t i) const { return norms_[i]; }
  std::span<const float> operator[](std::string_view token) const {
    const auto i = index_of(token);
    if (!i) throw NotInVocabulary({std::string(token)});
    return row(*i);
  }

  bool has_frequency_rank() const noexcept { return ranked_; }
  void set_frequency_ranked(bool ranked) noexcept { ranked_ = ranked; }
  /// Frequency rank (0 = most frequent); only meaningful when ranked.
  std::size_t rank(std::size_t i) const noexcept { return i; }

 private:
  std::size_t dim_ = 0;
  bool ranked_ = true;
  std::vector<std::string> tokens_;
  std::vector<float> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t, detail::StringHash, std::equal_to<>> index_;
};

}  // namespace wikivec
