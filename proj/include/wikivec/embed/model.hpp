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
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wikivec/embed/config.hpp"
#include "wikivec/embed/neg_loss.hpp"
#include "wikivec/embed/vocab.hpp"
#include "wikivec/error.hpp"
#include "wikivec/text/utf8.hpp"
#include "wikivec/vectors/vector_set.hpp"
#include "wikivec/wiki/title.hpp"

namespace wikivec {

/// Input (published) and output (context) matrices, both |V| x dim, row-major.
struct EmbeddingModel {
  Vocabulary vocab;
  std::size_t dim = 0;
  std::vector<float> input;
  std::vector<float> output;

  float* in_row(std::size_t i) { return input.data() + i * dim; }
  float* out_row(std::size_t i) { return output.data() + i * dim; }
  std::span<const float> in_row(std::size_t i) const { return {input.data() + i * dim, dim}; }
  std::span<const float> out_row(std::size_t i) const { return {output.data() + i * dim, dim}; }

  bool all_finite() const {
    for (const float x : input) {
      if (!std::isfinite(x)) return false;
    }
    for (const float x : output) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }
};

/// Random initialization: input rows uniform on [-0.5/dim, 0.5/dim], output
/// rows zero. With `pretrained`, every vocabulary token whose lowercased
/// spelling exists in the pretrained set takes that vector instead; concept
/// tokens never match.
inline EmbeddingModel init_model(Vocabulary vocab, const TrainingConfig& config,
                                 const VectorSet* pretrained = nullptr) {
  config.validate();
  if (vocab.empty()) throw Error("cannot initialize a model for an empty vocabulary");
  if (pretrained != nullptr && pretrained->dim() != config.dim) {
    throw Error("pretrained vectors have dim " + std::to_string(pretrained->dim()) + " but config.dim is " +
                std::to_string(config.dim));
  }
  EmbeddingModel model;
  model.dim = config.dim;
  model.input.resize(vocab.size() * config.dim);
  model.output.assign(vocab.size() * config.dim, 0.0f);

  std::mt19937_64 rng(config.seed);
  const double half = 0.5 / static_cast<double>(config.dim);
  std::uniform_real_distribution<double> uniform(-half, half);
  for (float& x : model.input) x = static_cast<float>(uniform(rng));

  if (pretrained != nullptr) {
    // First (most frequent) spelling wins when lowercasing merges entries.
    std::unordered_map<std::string, std::size_t> lowered;
    lowered.reserve(pretrained->size());
    for (std::size_t i = 0; i < pretrained->size(); ++i) lowered.try_emplace(utf8::to_lower(pretrained->token(i)), i);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      const std::string& token = vocab[i].token;
      if (parse_concept_token(token)) continue;
      const auto it = lowered.find(utf8::to_lower(token));
      if (it == lowered.end()) continue;
      const auto src = pretrained->row(it->second);
      std::copy(src.begin(), src.end(), model.in_row(i));
    }
  }
  model.vocab = std::move(vocab);
  return model;
}

/// One NEG update of (center, context, negatives) with learning rate lr.
/// Returns the loss before the update.
inline double sgd_step(EmbeddingModel& model, std::size_t center, std::size_t context,
                       std::span<const std::size_t> negatives, double lr) {
  const std::size_t n = model.vocab.size();
  if (center >= n || context >= n) throw Error("sgd_step: index out of range");
  for (const auto k : negatives) {
    if (k >= n) throw Error("sgd_step: negative index out of range");
  }
  if (!(lr > 0.0)) throw Error("sgd_step: learning rate must be positive");

  std::vector<float*> targets;
  targets.reserve(1 + negatives.size());
  targets.push_back(model.out_row(context));
  for (const auto k : negatives) targets.push_back(model.out_row(k));
  std::vector<float> scratch(model.dim + targets.size());
  return neg_sgd_update<float>(model.in_row(center), targets, model.dim, static_cast<float>(lr), scratch.data());
}

/// Input matrix as a frequency-ranked vector set (vocabulary order).
inline VectorSet to_vector_set(const EmbeddingModel& model) {
  VectorSet set(model.dim);
  set.reserve(model.vocab.size());
  for (std::size_t i = 0; i < model.vocab.size(); ++i) set.add(model.vocab[i].token, model.in_row(i));
  return set;
}

}  // namespace wikivec
