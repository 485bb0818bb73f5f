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

// Skip-gram NEG trainer.
//
// Workers own disjoint line-aligned byte ranges of the corpus file and update
// the shared matrices without locks (Hogwild). Each worker has its own RNG
// seeded from (seed, worker), so a single-worker run is fully reproducible.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "wikivec/embed/config.hpp"
#include "wikivec/embed/model.hpp"
#include "wikivec/embed/neg_loss.hpp"
#include "wikivec/embed/noise.hpp"
#include "wikivec/error.hpp"

namespace wikivec {

struct EpochReport {
  std::size_t epoch = 0;          // 1-based
  std::uint64_t words_seen = 0;   // in-vocabulary occurrences so far, all epochs
  double learning_rate = 0.0;     // rate at the end of the epoch
};

using EpochCallback = std::function<void(const EpochReport&)>;

namespace detail {

/// Line-aligned [begin, end) byte ranges, one per worker.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_file(const std::filesystem::path& path,
                                                                           unsigned parts) {
  const std::uint64_t size = std::filesystem::file_size(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus: " + path.string());
  std::vector<std::uint64_t> cuts{0};
  for (unsigned p = 1; p < parts; ++p) {
    std::uint64_t pos = std::max(cuts.back(), size * p / parts);
    if (pos > 0 && pos < size) {
      in.clear();
      in.seekg(static_cast<std::streamoff>(pos - 1));
      std::string skip;
      std::getline(in, skip);  // finish the line containing pos - 1
      pos = in ? static_cast<std::uint64_t>(in.tellg()) : size;
    }
    cuts.push_back(std::min(pos, size));
  }
  cuts.push_back(size);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  for (unsigned p = 0; p < parts; ++p) ranges.emplace_back(cuts[p], cuts[p + 1]);
  return ranges;
}

/// Probability of keeping one occurrence of a token with relative frequency f.
inline double keep_probability(double f, double t) {
  if (t <= 0.0 || f <= 0.0) return 1.0;
  return std::min(1.0, (std::sqrt(f / t) + 1.0) * t / f);
}

}  // namespace detail

/// Trains `model` on the corpus file in place and returns it.
///
/// Every epoch visits each in-vocabulary occurrence once (after subsampling);
/// for each, a window radius is drawn uniformly from [1, window] and every
/// context in range gets one update with `negatives` noise draws. Draws equal
/// to the context are skipped. The learning rate decays linearly from
/// lr_initial to lr_initial / 1e4 over epochs * total_tokens occurrences.
inline EmbeddingModel& train(const std::filesystem::path& corpus, EmbeddingModel& model,
                             const TrainingConfig& config, const EpochCallback& on_epoch = {}) {
  config.validate();
  if (config.dim != model.dim) throw Error("model dim does not match config.dim");
  if (config.epochs == 0 || model.vocab.empty()) return model;

  const Vocabulary& vocab = model.vocab;
  const NoiseSampler noise(vocab);
  const double total = static_cast<double>(vocab.total_tokens());
  const double scheduled = total * static_cast<double>(config.epochs);
  const double lr0 = config.lr_initial;
  const double lr_min = lr0 * 1e-4;

  std::vector<double> keep(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    keep[i] = detail::keep_probability(static_cast<double>(vocab[i].count) / total, config.subsample_t);
  }

  const unsigned workers = config.workers;
  const auto ranges = detail::partition_file(corpus, workers);
  std::atomic<std::uint64_t> words_done{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex failure_mu;

  const auto learning_rate = [&](std::uint64_t done) {
    const double progress = std::min(1.0, static_cast<double>(done) / scheduled);
    return std::max(lr_min, lr0 - (lr0 - lr_min) * progress);
  };

  const auto work = [&](unsigned w, std::size_t epoch) {
    std::seed_seq seq{config.seed, static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(epoch)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> radius(1, config.window);

    std::ifstream in(corpus, std::ios::binary);
    if (!in) throw IoError("cannot open corpus: " + corpus.string());
    in.seekg(static_cast<std::streamoff>(ranges[w].first));
    std::uint64_t pos = ranges[w].first;
    const std::uint64_t end = ranges[w].second;

    const std::size_t dim = model.dim;
    std::vector<float*> targets(1 + config.negatives);
    std::vector<float> scratch(dim + targets.size());
    std::vector<std::uint32_t> sentence;
    std::string line;
    std::uint64_t pending = 0;

    while (pos < end && std::getline(in, line)) {
      if (abort.load(std::memory_order_relaxed)) return;
      pos += line.size() + 1;
      sentence.clear();
      std::uint64_t seen = 0;
      for_each_field(line, [&](std::string_view tok) {
        const auto id = vocab.index_of(tok);
        if (!id) return;
        ++seen;
        if (keep[*id] < 1.0 && unit(rng) >= keep[*id]) return;
        sentence.push_back(*id);
      });

      const std::uint64_t base = words_done.load(std::memory_order_relaxed) + pending;
      const std::size_t n = sentence.size();
      for (std::size_t i = 0; i < n; ++i) {
        // Progress inside the line is interpolated over its raw length.
        const auto lr = static_cast<float>(learning_rate(base + (seen * i) / std::max<std::size_t>(n, 1)));
        float* v = model.in_row(sentence[i]);
        const std::size_t b = radius(rng);
        const std::size_t lo = i >= b ? i - b : 0;
        const std::size_t hi = std::min(n - 1, i + b);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const std::uint32_t context = sentence[j];
          std::size_t count = 0;
          targets[count++] = model.out_row(context);
          for (std::size_t k = 0; k < config.negatives; ++k) {
            const std::uint32_t neg = noise(rng);
            if (neg == context) continue;
            targets[count++] = model.out_row(neg);
          }
          neg_sgd_update<float, false>(v, std::span<float* const>(targets.data(), count), dim, lr, scratch.data());
        }
      }
      pending += seen;
      if (pending >= 10000) {
        words_done.fetch_add(pending, std::memory_order_relaxed);
        pending = 0;
      }
    }
    if (in.bad()) throw IoError("read failed on corpus: " + corpus.string());
    words_done.fetch_add(pending, std::memory_order_relaxed);
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto guarded = [&](unsigned w) {
      try {
        work(w, epoch);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        abort = true;
      }
    };
    if (workers == 1) {
      guarded(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) threads.emplace_back(guarded, w);
      for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    if (!model.all_finite()) throw Error("training diverged: non-finite vector entries after epoch " +
                                         std::to_string(epoch + 1));
    if (on_epoch) on_epoch({epoch + 1, words_done.load(), learning_rate(words_done.load())});
  }
  return model;
}

}  // namespace wikivec
