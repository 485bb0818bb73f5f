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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "support/temp_dir.hpp"
#include "wikivec/embed/config.hpp"
#include "wikivec/embed/model.hpp"
#include "wikivec/embed/neg_loss.hpp"
#include "wikivec/embed/noise.hpp"
#include "wikivec/embed/train.hpp"
#include "wikivec/embed/vocab.hpp"
#include "wikivec/vectors/query.hpp"

using namespace wikivec;

namespace {

Vocabulary vocab_of(const std::string& text, std::uint64_t min_count = 1) {
  std::istringstream in(text);
  return build_vocab(in, min_count);
}

TrainingConfig small_config(std::size_t dim = 8) {
  TrainingConfig c;
  c.dim = dim;
  c.min_count = 1;
  return c;
}

}  // namespace

TEST(Vocab, CountsAndCutoff) {
  const auto v = vocab_of("a a a b b c");
  const auto cut = vocab_of("a a a b b c", 2);
  ASSERT_EQ(cut.size(), 2u);
  EXPECT_EQ(cut[0], (Vocabulary::Entry{"a", 3}));
  EXPECT_EQ(cut[1], (Vocabulary::Entry{"b", 2}));
  EXPECT_FALSE(cut.index_of("c"));
  EXPECT_EQ(cut.total_tokens(), 5u);
  EXPECT_EQ(v.size(), 3u);
}

TEST(Vocab, TiesBreakLexicographically) {
  const auto v = vocab_of("zeta alpha\nmid zeta alpha");
  EXPECT_EQ(v[0].token, "alpha");
  EXPECT_EQ(v[1].token, "zeta");
  EXPECT_EQ(v[2].token, "mid");
}

TEST(Vocab, ConceptTokensCountLikeWords) {
  const auto v = vocab_of("wiki_42 born in wiki_42\n");
  EXPECT_EQ(v[*v.index_of("wiki_42")].count, 2u);
}

TEST(Noise, PowerLawProbabilities) {
  const std::vector<std::uint64_t> counts = {16, 1};
  const NoiseSampler s(counts);
  EXPECT_NEAR(s.probability(0), 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(s.probability(1), 1.0 / 9.0, 1e-12);
  std::mt19937_64 rng(1);
  std::size_t zeros = 0;
  const std::size_t draws = 900000;
  for (std::size_t i = 0; i < draws; ++i) zeros += s(rng) == 0;
  EXPECT_NEAR(static_cast<double>(zeros) / draws, 8.0 / 9.0, 3e-3);
}

TEST(Noise, UniformCountsSampleUniformly) {
  const std::vector<std::uint64_t> counts(7, 5);
  const NoiseSampler s(counts);
  std::mt19937_64 rng(3);
  std::vector<std::size_t> hist(7);
  for (int i = 0; i < 700000; ++i) ++hist[s(rng)];
  for (const auto h : hist) EXPECT_NEAR(h / 700000.0, 1.0 / 7.0, 3e-3);
}

TEST(Noise, SingleTokenAlwaysDrawn) {
  const std::vector<std::uint64_t> counts = {3};
  const NoiseSampler s(counts);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(s(rng), 0u);
}

TEST(Noise, EmptyVocabularyRejected) {
  EXPECT_THROW(NoiseSampler(std::span<const std::uint64_t>{}), Error);
}

TEST(NegLoss, ZeroVectorsGiveTwoLogTwo) {
  auto model = init_model(vocab_of("a b c"), small_config(4));
  std::fill(model.input.begin(), model.input.end(), 0.0f);
  const std::vector<std::size_t> negs = {2};
  EXPECT_NEAR(sgd_step(model, 0, 1, negs, 0.1), 2 * std::log(2.0), 1e-6);
}

TEST(NegLoss, StableForLargeArguments) {
  EXPECT_NEAR(neg_log_sigmoid(800.0), 0.0, 1e-300);
  EXPECT_NEAR(neg_log_sigmoid(-800.0), 800.0, 1e-9);
  EXPECT_NEAR(sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_TRUE(std::isfinite(neg_log_sigmoid(-1e6f)));
}

TEST(NegLoss, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int c = 0; c < 20; ++c) {
    std::vector<double> v(5);
    for (auto& x : v) x = u(rng);
    std::vector<std::vector<double>> rows(1 + c % 5, std::vector<double>(5));
    for (auto& r : rows) {
      for (auto& x : r) x = u(rng);
    }
    std::vector<const double*> ptrs;
    for (const auto& r : rows) ptrs.push_back(r.data());
    std::vector<double> coef(rows.size()), gv(5);
    neg_loss_grad<double>(v.data(), ptrs, 5, coef.data(), gv.data());
    const auto [fv, fu] = fixtures::fd_neg_gradient(v, rows, 1e-5);
    EXPECT_LT(fixtures::relative_error(gv, fv), 1e-6);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::vector<double> gu(5);
      for (std::size_t i = 0; i < 5; ++i) gu[i] = coef[k] * v[i];
      EXPECT_LT(fixtures::relative_error(gu, fu[k]), 1e-6);
    }
  }
}

TEST(NegLoss, SgdStepUsesPreUpdateValues) {
  auto model = init_model(vocab_of("a b c"), small_config(3));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<float> u(-1, 1);
  for (auto& x : model.input) x = u(rng);
  for (auto& x : model.output) x = u(rng);
  const auto& cm = model;
  const std::vector<double> v(cm.in_row(0).begin(), cm.in_row(0).end());
  const std::vector<std::vector<double>> rows = {{cm.out_row(1).begin(), cm.out_row(1).end()},
                                                 {cm.out_row(2).begin(), cm.out_row(2).end()}};
  const double lr = 0.05;
  const std::vector<std::size_t> negs = {2};
  const double loss = sgd_step(model, 0, 1, negs, lr);
  EXPECT_NEAR(loss, fixtures::ref_neg_loss(v, rows), 1e-6);
  const auto [gv, gu] = fixtures::fd_neg_gradient(v, rows, 1e-6);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(cm.in_row(0)[i], v[i] - lr * gv[i], 1e-5);
    EXPECT_NEAR(cm.out_row(1)[i], rows[0][i] - lr * gu[0][i], 1e-5);
    EXPECT_NEAR(cm.out_row(2)[i], rows[1][i] - lr * gu[1][i], 1e-5);
  }
}

TEST(NegLoss, SgdStepValidatesIndices) {
  auto model = init_model(vocab_of("a b"), small_config(2));
  const std::vector<std::size_t> bad = {5};
  EXPECT_THROW(sgd_step(model, 0, 1, bad, 0.1), Error);
  EXPECT_THROW(sgd_step(model, 0, 9, {}, 0.1), Error);
  EXPECT_THROW(sgd_step(model, 0, 1, {}, 0.0), Error);
}

TEST(InitModel, RandomRange) {
  const auto model = init_model(vocab_of("a b c d e"), small_config(10));
  for (const float x : model.input) {
    EXPECT_GE(x, -0.05f);
    EXPECT_LE(x, 0.05f);
  }
  for (const float x : model.output) EXPECT_EQ(x, 0.0f);
}

TEST(InitModel, PretrainedRowsCopied) {
  VectorSet pre(3);
  pre.add("King", std::vector<float>{1, 2, 3});
  pre.add("wiki_42", std::vector<float>{7, 7, 7});
  const auto model = init_model(vocab_of("king wiki_42 king"), small_config(3), &pre);
  const auto king = model.in_row(*model.vocab.index_of("king"));
  EXPECT_EQ(std::vector<float>(king.begin(), king.end()), (std::vector<float>{1, 2, 3}));
  const auto concept_row = model.in_row(*model.vocab.index_of("wiki_42"));
  for (const float x : concept_row) EXPECT_LE(std::abs(x), 0.5f / 3);
}

TEST(InitModel, DimMismatchRejected) {
  VectorSet pre(300);
  EXPECT_THROW(init_model(vocab_of("a"), small_config(100), &pre), Error);
}

TEST(Train, TwoClustersSeparate) {
  fixtures::TempDir dir;
  {
    std::ofstream out(dir / "c.txt");
    std::mt19937_64 rng(1);
    for (int l = 0; l < 200; ++l) {
      const char* group = l % 2 ? "a" : "b";
      for (int t = 0; t < 50; ++t) out << group << (1 + rng() % 2) << ' ';
      out << '\n';
    }
  }
  auto config = small_config(10);
  config.subsample_t = 0;
  config.window = 3;
  auto model = init_model(build_vocab(dir / "c.txt", 1), config);
  train(dir / "c.txt", model, config);
  const auto set = to_vector_set(model);
  EXPECT_GT(cosine(set["a1"], set["a2"]), cosine(set["a1"], set["b1"]));
  EXPECT_GT(cosine(set["b1"], set["b2"]), cosine(set["a2"], set["b2"]));
}

TEST(Train, ZeroEpochsIsNoOp) {
  fixtures::TempDir dir;
  fixtures::spit(dir / "c.txt", "x y z x y z\n");
  auto config = small_config(4);
  config.epochs = 0;
  auto model = init_model(build_vocab(dir / "c.txt", 1), config);
  const auto before = model.input;
  train(dir / "c.txt", model, config);
  EXPECT_EQ(model.input, before);
}

TEST(Train, SameSeedIsBitIdentical) {
  fixtures::TempDir dir;
  fixtures::write_cluster_corpus(dir / "c.txt", 2, 10, 20, 200, 5);
  auto config = small_config(12);
  config.subsample_t = 1e-3;
  auto a = init_model(build_vocab(dir / "c.txt", 1), config);
  auto b = init_model(build_vocab(dir / "c.txt", 1), config);
  train(dir / "c.txt", a, config);
  train(dir / "c.txt", b, config);
  EXPECT_EQ(a.input, b.input);
  EXPECT_EQ(a.output, b.output);
  config.seed = 2;
  auto c = init_model(build_vocab(dir / "c.txt", 1), config);
  train(dir / "c.txt", c, config);
  EXPECT_NE(a.input, c.input);
}

TEST(Train, ParallelWorkersStayFinite) {
  fixtures::TempDir dir;
  fixtures::write_cluster_corpus(dir / "c.txt", 3, 10, 64, 100, 6);
  auto config = small_config(16);
  config.workers = 4;
  config.subsample_t = 0;
  auto model = init_model(build_vocab(dir / "c.txt", 1), config);
  std::vector<EpochReport> reports;
  train(dir / "c.txt", model, config, [&](const EpochReport& r) { reports.push_back(r); });
  EXPECT_TRUE(model.all_finite());
  ASSERT_EQ(reports.size(), config.epochs);
  for (std::size_t i = 1; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].epoch, i + 1);
    EXPECT_LT(reports[i].learning_rate, reports[i - 1].learning_rate);
    EXPECT_GT(reports[i].words_seen, reports[i - 1].words_seen);
  }
}

TEST(Train, DimMismatchRejected) {
  fixtures::TempDir dir;
  fixtures::spit(dir / "c.txt", "x y\n");
  auto model = init_model(build_vocab(dir / "c.txt", 1), small_config(4));
  EXPECT_THROW(train(dir / "c.txt", model, small_config(5)), Error);
}

TEST(Train, KeepProbability) {
  EXPECT_EQ(detail::keep_probability(1e-6, 1e-5), 1.0);
  EXPECT_NEAR(detail::keep_probability(1e-3, 1e-5), (std::sqrt(1e-3 / 1e-5) + 1) * (1e-5 / 1e-3), 1e-15);
  EXPECT_EQ(detail::keep_probability(0.5, 0.0), 1.0);
}

TEST(Train, PartitionIsLineAligned) {
  fixtures::TempDir dir;
  fixtures::spit(dir / "c.txt", "aa bb\ncc\n\ndd ee ff\ngg\n");
  const auto text = fixtures::slurp(dir / "c.txt");
  for (unsigned parts = 1; parts <= 6; ++parts) {
    const auto ranges = detail::partition_file(dir / "c.txt", parts);
    std::uint64_t expect = 0;
    for (const auto& [b, e] : ranges) {
      EXPECT_EQ(b, expect);
      EXPECT_TRUE(b == 0 || text[b - 1] == '\n');
      expect = e;
    }
    EXPECT_EQ(expect, text.size());
  }
}

TEST(Config, Validation) {
  TrainingConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dim = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.lr_initial = -1;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.subsample_t = -1;
  EXPECT_THROW(c.validate(), Error);
}
