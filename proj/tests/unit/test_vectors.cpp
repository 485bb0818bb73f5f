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
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/temp_dir.hpp"
#include "wikivec/vectors/query.hpp"
#include "wikivec/vectors/text_io.hpp"
#include "wikivec/vectors/vector_set.hpp"

using namespace wikivec;

namespace {

VectorSet parse(const std::string& text) {
  std::istringstream in(text);
  return load_text(in, "test");
}

VectorSet basis3() {
  VectorSet s(3);
  s.add("e1", std::vector<float>{1, 0, 0});
  s.add("e2", std::vector<float>{0, 1, 0});
  s.add("e3", std::vector<float>{0, 0, 1});
  return s;
}

NearestOptions top(std::size_t k, const TokenSet* exclude = nullptr) {
  return {.k = k, .exclude = exclude, .max_rank = std::nullopt};
}

}  // namespace

TEST(VectorSet, RejectsBadRows) {
  VectorSet s(2);
  s.add("a", std::vector<float>{1, 2});
  EXPECT_THROW(s.add("a", std::vector<float>{1, 2}), Error);
  EXPECT_THROW(s.add("b", std::vector<float>{1}), Error);
  EXPECT_THROW(s.add("c", std::vector<float>{1, NAN}), Error);
  EXPECT_THROW(s["zzz"], NotInVocabulary);
  EXPECT_DOUBLE_EQ(s.norm(0), std::sqrt(5.0));
}

TEST(TextIo, RoundTrip) {
  VectorSet s(4);
  s.add("x", std::vector<float>{0.1f, -2.5f, 3e-7f, 1234.5f});
  s.add("wiki_7", std::vector<float>{0, 1, 2, 3});
  s.add("ÿ", std::vector<float>{-1, -1, -1, 1.0f / 3});
  std::stringstream io;
  save_text(s, io);
  const auto back = load_text(io);
  ASSERT_EQ(back.size(), 3u);
  ASSERT_EQ(back.dim(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.token(i), s.token(i));
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(back.row(i)[k], s.row(i)[k], 1e-6 * std::max(1.0f, std::abs(s.row(i)[k])));
    }
  }
}

TEST(TextIo, HeaderlessDimInferred) {
  const auto s = parse("a 1.0 0.0\nb 0.0 1.0\n");
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.token(1), "b");
}

TEST(TextIo, HeaderDetected) {
  const auto s = parse("2 3\na 1 2 3\nb 4 5 6\n");
  EXPECT_EQ(s.dim(), 3u);
  EXPECT_EQ(s.size(), 2u);
}

TEST(TextIo, RaggedRowsReportLine) {
  try {
    parse("a 1 2 3\nb 1 2 3 4\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(TextIo, HeaderCountMustMatch) {
  EXPECT_THROW(parse("3 2\na 1 2\nb 3 4\n"), FormatError);
  EXPECT_THROW(parse("2 0\n"), FormatError);
  EXPECT_THROW(parse("a 1 x\n"), FormatError);
}

TEST(TextIo, RowsKeepFileOrder) {
  const auto s = parse("zeta 1\nalpha 2\n");
  EXPECT_EQ(s.rank(*s.index_of("zeta")), 0u);
  EXPECT_EQ(s.rank(*s.index_of("alpha")), 1u);
}

TEST(TextIo, FileRoundTripIsStable) {
  fixtures::TempDir dir;
  std::mt19937_64 rng(2);
  std::normal_distribution<float> g;
  VectorSet s(5);
  for (int i = 0; i < 30; ++i) {
    std::vector<float> v(5);
    for (auto& x : v) x = g(rng);
    s.add("t" + std::to_string(i), v);
  }
  save_text(s, dir / "a.vec");
  save_text(load_text(dir / "a.vec"), dir / "b.vec", false);
  save_text(load_text(dir / "b.vec"), dir / "c.vec");
  EXPECT_EQ(fixtures::slurp(dir / "a.vec"), fixtures::slurp(dir / "c.vec"));
}

TEST(Nearest, SelfFirst) {
  const auto s = basis3();
  const std::vector<double> q = {1, 0, 0};
  const auto r = nearest(s, q, top(3));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], (Neighbor{"e1", 1.0}));
}

TEST(Nearest, ExcludedQueryFallsToTieRule) {
  const auto s = basis3();
  const TokenSet ex = {"e1"};
  const std::vector<double> q = {1, 0, 0};
  const auto r = nearest(s, q, top(2, &ex));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (Neighbor{"e2", 0.0}));
  EXPECT_EQ(r[1], (Neighbor{"e3", 0.0}));
}

TEST(Nearest, DiagonalQuery) {
  VectorSet s(2);
  s.add("e2", std::vector<float>{0, 1});
  s.add("e1", std::vector<float>{1, 0});
  const std::vector<double> q = {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  const auto r = nearest(s, q, top(2));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].token, "e1");
  EXPECT_NEAR(r[0].cosine, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(r[1].cosine, std::sqrt(0.5), 1e-12);
}

TEST(Nearest, MatchesSortedExhaustiveSearch) {
  std::mt19937_64 rng(6);
  std::normal_distribution<float> g;
  VectorSet s(6);
  for (int i = 0; i < 200; ++i) {
    std::vector<float> v(6);
    for (auto& x : v) x = g(rng);
    s.add("t" + std::to_string(i), v);
  }
  for (int t = 0; t < 20; ++t) {
    std::vector<double> q(6);
    for (auto& x : q) x = g(rng);
    std::vector<Neighbor> all;
    for (std::size_t i = 0; i < s.size(); ++i) all.push_back({s.token(i), cosine(std::span<const double>(q), s.row(i))});
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.cosine != b.cosine ? a.cosine > b.cosine : a.token < b.token;
    });
    const auto r = nearest(s, q, top(7));
    ASSERT_EQ(r.size(), 7u);
    for (std::size_t i = 0; i < 7; ++i) {
      EXPECT_EQ(r[i].token, all[i].token);
      EXPECT_NEAR(r[i].cosine, all[i].cosine, 1e-12);
    }
  }
}

TEST(Nearest, MaxRankAndZeroRows) {
  VectorSet s(2);
  s.add("zero", std::vector<float>{0, 0});
  s.add("a", std::vector<float>{1, 0});
  s.add("b", std::vector<float>{1, 0.1f});
  const std::vector<double> q = {1, 0.1};
  const auto capped = nearest(s, q, {.k = 5, .exclude = nullptr, .max_rank = 2});
  ASSERT_EQ(capped.size(), 1u);
  EXPECT_EQ(capped[0].token, "a");
  EXPECT_THROW(nearest(s, std::vector<double>{0, 0}, top(1)), Error);
  EXPECT_THROW(nearest(s, std::vector<double>{1}, top(1)), Error);
  EXPECT_THROW(nearest(s, q, top(0)), Error);
}

TEST(Analogy, ExactConstruction) {
  VectorSet s(3);
  s.add("man", std::vector<float>{1, 0, 0});
  s.add("king", std::vector<float>{1, 1, 0});
  s.add("woman", std::vector<float>{0, 0, 1});
  s.add("queen", std::vector<float>{0, 1, 1});
  s.add("apple", std::vector<float>{1, -1, 0.3f});
  EXPECT_EQ(analogy_query(s, "man", "king", "woman"), "queen");
}

TEST(Analogy, EqualPairReducesToNearestOfC) {
  VectorSet s(2);
  s.add("a", std::vector<float>{1, 0});
  s.add("c", std::vector<float>{0, 1});
  s.add("near", std::vector<float>{0.1f, 1});
  s.add("far", std::vector<float>{1, -1});
  EXPECT_EQ(analogy_query(s, "a", "a", "c"), "near");
}

TEST(Analogy, UniqueBestMatchesBruteForce) {
  VectorSet s(3);
  s.add("p", std::vector<float>{1, 2, 0});
  s.add("q", std::vector<float>{2, 1, 1});
  s.add("r", std::vector<float>{0, 1, 3});
  s.add("x", std::vector<float>{1, 0, 4});
  s.add("y", std::vector<float>{-2, 1, 1});
  std::vector<double> q(3);
  for (int i = 0; i < 3; ++i) q[i] = s["q"][i] - s["p"][i] + s["r"][i];
  std::string best;
  double best_cos = -2;
  for (const auto* t : {"x", "y"}) {
    const double c = cosine(std::span<const double>(q), s[t]);
    if (c > best_cos) best_cos = c, best = t;
  }
  EXPECT_EQ(analogy_query(s, "p", "q", "r"), best);
}

TEST(Analogy, MissingTokensReported) {
  const auto s = basis3();
  try {
    analogy_query(s, "e1", "nope", "gone");
    FAIL() << "expected NotInVocabulary";
  } catch (const NotInVocabulary& e) {
    EXPECT_EQ(e.missing(), (std::vector<std::string>{"nope", "gone"}));
  }
}

TEST(Analogy, NoCandidateLeft) {
  VectorSet s(2);
  s.add("a", std::vector<float>{1, 0});
  s.add("b", std::vector<float>{0, 1});
  s.add("c", std::vector<float>{1, 1});
  EXPECT_FALSE(try_analogy(s, "a", "b", "c"));
  EXPECT_THROW(analogy_query(s, "a", "b", "c"), Error);
}
