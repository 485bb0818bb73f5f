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
#include <cstdint>
#include <span>
#include <vector>

#include "wikivec/embed/vocab.hpp"
#include "wikivec/error.hpp"

namespace wikivec {

/// Noise distribution over vocabulary indices, P(i) proportional to
/// count(i)^power. Walker/Vose alias tables give O(1) draws.
class NoiseSampler {
 public:
  explicit NoiseSampler(std::span<const std::uint64_t> counts, double power = 0.75) {
    const std::size_t n = counts.size();
    if (n == 0) throw Error("noise distribution needs a non-empty vocabulary");
    if (n > (std::size_t{1} << 32)) throw Error("vocabulary too large for the noise sampler");
    probability_.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += probability_[i] = std::pow(static_cast<double>(counts[i]), power);
    if (!(total > 0.0)) throw Error("noise distribution has zero mass");
    for (auto& p : probability_) p /= total;

    prob_.resize(n);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = probability_[i] * static_cast<double>(n);
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const auto s = small.back();
      small.pop_back();
      const auto l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (const auto i : large) prob_[i] = 1.0, alias_[i] = i;
    for (const auto i : small) prob_[i] = 1.0, alias_[i] = i;  // rounding residue
  }

  explicit NoiseSampler(const Vocabulary& vocab, double power = 0.75) : NoiseSampler(counts_of(vocab), power) {}

  std::size_t size() const noexcept { return prob_.size(); }

  /// Exact sampling probability of index i.
  double probability(std::size_t i) const { return probability_.at(i); }

  /// One draw from a 64-bit uniform generator.
  template <typename Rng>
  std::uint32_t operator()(Rng& rng) const {
    const std::uint64_t r = rng();
    const auto column = static_cast<std::uint32_t>(((r >> 32) * prob_.size()) >> 32);
    const double u = static_cast<double>(r & 0xffffffffu) * 0x1p-32;
    return u < prob_[column] ? column : alias_[column];
  }

 private:
  static std::vector<std::uint64_t> counts_of(const Vocabulary& vocab) {
    std::vector<std::uint64_t> c;
    c.reserve(vocab.size());
    for (const auto& e : vocab.entries()) c.push_back(e.count);
    return c;
  }

  std::vector<double> probability_;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace wikivec
