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
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/temp_dir.hpp"
#include "wikivec/eval/analogy.hpp"
#include "wikivec/eval/sense_index.hpp"
#include "wikivec/eval/similarity.hpp"
#include "wikivec/eval/spearman.hpp"

using namespace wikivec;

namespace {

std::vector<AnalogyQuestion> questions_of(const std::string& text) {
  std::istringstream in(text);
  return load_analogy_questions(in);
}

// Scores pairs from a lookup table keyed by the first term.
class TableScorer final : public PairScorer {
 public:
  TableScorer(std::string name, std::map<std::string, double> table) : name_(std::move(name)), table_(std::move(table)) {}
  std::string name() const override { return name_; }
  std::optional<double> score(std::string_view first, std::string_view) const override {
    const auto it = table_.find(std::string(first));
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::string name_;
  std::map<std::string, double> table_;
};

// Unit vectors at increasing angles: "w0" is the anchor, "wi" lies i degrees*10 away.
VectorSet fan(int n) {
  VectorSet s(2);
  for (int i = 0; i < n; ++i) {
    const double a = i * 10.0 * M_PI / 180.0;
    s.add("w" + std::to_string(i), std::vector<float>{static_cast<float>(std::cos(a)), static_cast<float>(std::sin(a))});
  }
  return s;
}

}  // namespace

TEST(Spearman, Monotone) {
  const std::vector<double> x = {1, 2, 3}, y = {10, 20, 30}, r = {3, 2, 1};
  EXPECT_EQ(spearman(x, y), 1.0);
  EXPECT_EQ(spearman(x, r), -1.0);
}

TEST(Spearman, TiesMatchBruteForce) {
  const std::vector<double> x = {1, 2, 2, 4}, y = {1, 3, 2, 4};
  EXPECT_NEAR(*spearman(x, y), fixtures::brute_spearman(x, y), 1e-12);
  EXPECT_EQ(average_ranks(x), (std::vector<double>{1, 2.5, 2.5, 4}));
}

TEST(Spearman, RandomAgainstOracle) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng() % 30;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(rng() % 5), y[i] = static_cast<double>(rng() % 7);
    const auto rho = spearman(x, y);
    if (rho) {
      EXPECT_NEAR(*rho, fixtures::brute_spearman(x, y), 1e-12);
    }
  }
}

TEST(Spearman, DegenerateInputs) {
  const std::vector<double> c = {2, 2, 2}, x = {1, 2, 3};
  EXPECT_FALSE(spearman(c, x));
  EXPECT_THROW(spearman(std::vector<double>{1}, std::vector<double>{1}), Error);
  EXPECT_THROW(spearman(x, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(spearman(x, std::vector<double>{1, NAN, 2}), Error);
}

TEST(AnalogyQuestions, ParseAndSections) {
  const auto qs = questions_of(": capital-world\nAthens Greece Baghdad Iraq\n\n: family\nboy girl king queen\n");
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0], (AnalogyQuestion{"athens", "greece", "baghdad", "iraq", "capital-world"}));
  EXPECT_EQ(qs[1], (AnalogyQuestion{"boy", "girl", "king", "queen", "family"}));
}

TEST(AnalogyQuestions, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(questions_of(": a\n: b\n").empty());
}

TEST(AnalogyQuestions, WrongArity) {
  EXPECT_THROW(questions_of("a b c\n"), FormatError);
}

TEST(AnalogyQuestions, SenseMapping) {
  SenseIndex senses;
  senses.add("new york", 5, 3);
  senses.add("paris", 7, 1);
  const auto qs = map_questions(questions_of("new_york usa paris france\n"), senses);
  EXPECT_EQ(qs[0], (AnalogyQuestion{"wiki_5", "usa", "wiki_7", "france", ""}));
}

TEST(EvalAnalogy, ExactConstructionScoresOne) {
  VectorSet s(3);
  s.add("man", std::vector<float>{1, 0, 0});
  s.add("king", std::vector<float>{1, 1, 0});
  s.add("woman", std::vector<float>{0, 0, 1});
  s.add("queen", std::vector<float>{0, 1, 1});
  const auto r = eval_analogy(s, questions_of("man king woman queen\nwoman queen man king\n"), {4}).front();
  EXPECT_EQ(r.found, 2u);
  EXPECT_EQ(r.accuracy(), 1.0);
}

TEST(EvalAnalogy, NothingFoundIsUndefined) {
  VectorSet s(2);
  s.add("a", std::vector<float>{1, 0});
  const auto r = eval_analogy(s, questions_of("x y z w\n"), {10}).front();
  EXPECT_EQ(r.found, 0u);
  EXPECT_FALSE(r.accuracy());
  EXPECT_TRUE(r.to_json()["accuracy"].is_null());
}

TEST(EvalAnalogy, HalfCorrect) {
  VectorSet s(2);
  s.add("a", std::vector<float>{1, 0});
  s.add("b", std::vector<float>{1, 1});
  s.add("c", std::vector<float>{-1, 0});
  s.add("d", std::vector<float>{-1, 1});
  s.add("e", std::vector<float>{0, -1});
  const auto qs = questions_of(
      "a b c d\nc d a b\na b c e\nc d a e\na b c x\nx b c d\na b y d\nq r s t\nz b c d\na b c zz\n");
  const auto r = eval_analogy(s, qs, {5}, 3).front();
  EXPECT_EQ(r.total, 10u);
  EXPECT_EQ(r.found, 4u);
  EXPECT_EQ(r.correct, 2u);
  EXPECT_DOUBLE_EQ(*r.accuracy(), 0.5);
}

TEST(EvalAnalogy, BucketsCapByRank) {
  VectorSet s(2);
  s.add("a", std::vector<float>{1, 0});
  s.add("b", std::vector<float>{1, 1});
  s.add("c", std::vector<float>{-1, 0});
  s.add("d", std::vector<float>{-1, 1});
  const auto reports = eval_analogy(s, questions_of("a b c d\n"), {3, 4});
  EXPECT_EQ(reports[0].found, 0u);
  EXPECT_EQ(reports[1].found, 1u);
  VectorSet unranked(2, false);
  EXPECT_THROW(eval_analogy(unranked, {}, {1}), Error);
}

TEST(EvalAnalogyCommons, DisjointVocabularies) {
  VectorSet a(2), b(2);
  for (const auto* t : {"p", "q", "r", "s"}) a.add(t, std::vector<float>{1, 0.5f});
  for (const auto* t : {"w", "x", "y", "z"}) b.add(t, std::vector<float>{1, 0.5f});
  const auto out = eval_analogy_commons({&a, &b}, questions_of("p q r s\nw x y z\n"), {10});
  EXPECT_EQ(out[0][0].found, 0u);
  EXPECT_FALSE(out[1][0].accuracy());
}

TEST(EvalAnalogyCommons, IdenticalSetsMatchAll) {
  VectorSet s(2);
  s.add("a", std::vector<float>{1, 0});
  s.add("b", std::vector<float>{1, 1});
  s.add("c", std::vector<float>{-1, 0});
  s.add("d", std::vector<float>{-1, 1});
  const auto qs = questions_of("a b c d\nc d a b\na b c x\n");
  const auto all = eval_analogy(s, qs, {4});
  const auto commons = eval_analogy_commons({&s, &s}, qs, {4});
  for (const auto& per_set : commons) {
    EXPECT_EQ(per_set[0].found, all[0].found);
    EXPECT_EQ(per_set[0].correct, all[0].correct);
  }
}

TEST(EvalAnalogyCommons, IntersectionOfFoundQuestions) {
  // Set A covers q1..q3, set B covers q2..q4.
  VectorSet a(2), b(2);
  for (const auto* t : {"a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2", "a3", "b3", "c3", "d3"}) {
    a.add(t, std::vector<float>{1, static_cast<float>(a.size())});
  }
  for (const auto* t : {"a2", "b2", "c2", "d2", "a3", "b3", "c3", "d3", "a4", "b4", "c4", "d4"}) {
    b.add(t, std::vector<float>{1, static_cast<float>(b.size())});
  }
  const auto qs = questions_of("a1 b1 c1 d1\na2 b2 c2 d2\na3 b3 c3 d3\na4 b4 c4 d4\n");
  const auto out = eval_analogy_commons({&a, &b}, qs, {100});
  EXPECT_EQ(out[0][0].found, 2u);
  EXPECT_EQ(out[1][0].found, 2u);
  EXPECT_EQ(eval_analogy(a, qs, {100})[0].found, 3u);
  EXPECT_THROW(eval_analogy_commons({&a}, qs, {100}), Error);
}

TEST(SenseIndex, ArgmaxAndTies) {
  SenseIndex s;
  s.add("Amazon", 7, 120);
  s.add("amazon", 9, 80);
  s.add("seine", 3);
  s.add("cell", 11, 50);
  s.add("cell", 4, 50);
  EXPECT_EQ(s.lookup("amazon")->page_id, 7u);
  EXPECT_EQ(s.lookup("Seine")->page_id, 3u);
  EXPECT_EQ(s.lookup("cell")->page_id, 4u);
  EXPECT_FALSE(s.lookup("nothing"));
  EXPECT_EQ(s.map_token("Amazon"), "wiki_7");
  EXPECT_EQ(s.map_token("Rio  Negro"), "rio negro");
}

TEST(SenseIndex, LateOvertake) {
  SenseIndex s;
  s.add("x", 1, 3);
  s.add("x", 2, 2);
  s.add("x", 2, 2);
  EXPECT_EQ(s.lookup("x"), (SenseIndex::Sense{2, 4}));
}

TEST(SenseIndex, BuildFromPairs) {
  const std::vector<std::pair<std::string, PageId>> obs = {{"a", 2}, {"a", 1}, {"a", 2}, {"b", 5}};
  const auto s = build_sense_index(obs);
  EXPECT_EQ(s.lookup("a"), (SenseIndex::Sense{2, 2}));
  EXPECT_EQ(s.size(), 2u);
}

TEST(SenseIndex, LoadTsv) {
  std::istringstream ok("amazon\t7\t120\namazon\t9\t80\n");
  EXPECT_EQ(load_sense_index(ok).lookup("amazon")->page_id, 7u);
  std::istringstream bad("amazon 7 120\n");
  EXPECT_THROW(load_sense_index(bad), FormatError);
}

TEST(SimilarityData, Separators) {
  std::istringstream tsv("word1\tword2\tscore\nnew york\tcity\t7.5\n# note\ntiger,cat,7.35\nbook novel 6\n");
  const auto ds = load_similarity_dataset(tsv, "mixed");
  ASSERT_EQ(ds.pairs.size(), 3u);
  EXPECT_EQ(ds.pairs[0], (SimilarityPair{"new york", "city", 7.5}));
  EXPECT_EQ(ds.pairs[1], (SimilarityPair{"tiger", "cat", 7.35}));
  EXPECT_EQ(ds.pairs[2], (SimilarityPair{"book", "novel", 6}));
}

TEST(SimilarityData, BadLineAfterHeader) {
  std::istringstream in("a\tb\t1\nc\td\tx\n");
  EXPECT_THROW(load_similarity_dataset(in, "bad"), FormatError);
}

TEST(EvalSimilarity, PerfectAndReversed) {
  const auto s = fan(6);
  SimilarityDataset same{"same", {}}, rev{"rev", {}};
  for (int i = 1; i < 6; ++i) {
    same.pairs.push_back({"w0", "w" + std::to_string(i), 10.0 - i});
    rev.pairs.push_back({"w0", "w" + std::to_string(i), static_cast<double>(i)});
  }
  same.pairs.push_back({"w0", "missing", 3});
  const auto a = eval_similarity(s, same, nullptr);
  EXPECT_EQ(a.rho, 1.0);
  EXPECT_EQ(a.not_found, 1u);
  EXPECT_EQ(a.evaluated(), 5u);
  EXPECT_EQ(eval_similarity(s, rev, nullptr).rho, -1.0);
}

TEST(EvalSimilarity, SenseMappedTerms) {
  VectorSet s(2);
  s.add("wiki_1", std::vector<float>{1, 0});
  s.add("wiki_2", std::vector<float>{1, 0.2f});
  s.add("wiki_3", std::vector<float>{0, 1});
  SenseIndex senses;
  senses.add("jaguar", 1);
  senses.add("cat", 2);
  senses.add("car", 3);
  const SimilarityDataset ds{"d", {{"jaguar", "cat", 9}, {"jaguar", "car", 2}}};
  EXPECT_EQ(eval_similarity(s, ds, &senses).rho, 1.0);
  EXPECT_EQ(eval_similarity(s, ds, nullptr).not_found, 2u);
}

TEST(CommonSubset, IntersectionOfCoverage) {
  const SimilarityDataset ds{"five", {{"p1", "x", 1}, {"p2", "x", 2}, {"p3", "x", 3}, {"p4", "x", 4}, {"p5", "x", 5}}};
  const TableScorer a("a", {{"p1", 9}, {"p2", 1}, {"p3", 2}, {"p4", 3}});
  const TableScorer b("b", {{"p2", 3}, {"p3", 2}, {"p4", 1}, {"p5", 0}});
  const auto t = common_subset_eval({&a, &b}, {ds});
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].pairs_common, 3u);
  EXPECT_EQ(t.rows[0].rho[0], 1.0);
  EXPECT_EQ(t.rows[0].rho[1], -1.0);
  EXPECT_EQ(t.average()[0], 1.0);
}

TEST(CommonSubset, IdenticalScorersAgree) {
  const auto s = fan(5);
  const VectorScorer x(s, nullptr, "x"), y(s, nullptr, "y");
  const SimilarityDataset ds{"d", {{"w0", "w1", 3}, {"w0", "w2", 1}, {"w0", "w3", 2}, {"w0", "nope", 1}}};
  const auto t = common_subset_eval({&x, &y}, {ds});
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].rho[0], t.rows[0].rho[1]);
  EXPECT_EQ(t.rows[0].rho[0], eval_similarity(x, ds).rho);
}

TEST(CommonSubset, EmptyCoverageSkips) {
  const TableScorer a("a", {{"p1", 1}, {"p2", 2}}), none("none", {});
  const SimilarityDataset d1{"d1", {{"p1", "x", 1}, {"p2", "x", 2}}}, d2{"d2", {{"p1", "x", 1}}};
  const auto t = common_subset_eval({&a, &none}, {d1, d2});
  EXPECT_TRUE(t.rows.empty());
  EXPECT_EQ(t.skipped, (std::vector<std::string>{"d1", "d2"}));
  EXPECT_THROW(common_subset_eval({&a}, {d1}), Error);
}
