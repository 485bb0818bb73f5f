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
#include <numeric>
#include <vector>

#include "support/oracles.hpp"
#include "support/temp_dir.hpp"
#include "wikivec/link/graph.hpp"
#include "wikivec/link/relatedness.hpp"

namespace fs = std::filesystem;
using namespace wikivec;

namespace {

const fs::path kData = WIKIVEC_TEST_DATA;

std::vector<PageId> ids(std::span<const std::uint32_t> dense, const LinkGraph& g) {
  std::vector<PageId> out;
  for (const auto i : dense) out.push_back(g.page_at(i));
  return out;
}

}  // namespace

TEST(LinkGraph, DirectConstruction) {
  const auto g = LinkGraph::from_edges({1, 2, 3}, {{1, 2}, {1, 3}, {1, 2}, {2, 2}, {3, 99}});
  EXPECT_EQ(g.page_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(ids(g.out_links(*g.index_of(1)), g), (std::vector<PageId>{2, 3}));
  EXPECT_EQ(ids(g.in_links(*g.index_of(2)), g), (std::vector<PageId>{1}));
  EXPECT_TRUE(g.out_links(*g.index_of(2)).empty());
  EXPECT_FALSE(g.contains(99));
}

TEST(LinkGraph, FromDumpSkipsPrunedTargets) {
  const auto g = build_link_graph(kData / "small_dump.xml");
  EXPECT_EQ(g.page_count(), 7u);
  EXPECT_FALSE(g.contains(102));
  EXPECT_EQ(ids(g.in_links(*g.index_of(100)), g), (std::vector<PageId>{101, 105, 106, 107}));
  EXPECT_EQ(ids(g.out_links(*g.index_of(105)), g), (std::vector<PageId>{100}));
  EXPECT_EQ(g.edge_count(), 4u);
}

TEST(LinkGraph, RulesFixtureEdges) {
  const auto g = build_link_graph(kData / "rules_dump.xml");
  EXPECT_EQ(g.page_count(), 6u);
  EXPECT_EQ(g.edge_count(), 11u);
  EXPECT_EQ(ids(g.out_links(*g.index_of(10)), g), (std::vector<PageId>{11, 12, 13, 14}));
  EXPECT_EQ(ids(g.out_links(*g.index_of(13)), g), (std::vector<PageId>{10}));
}

TEST(LinkGraph, SaveLoadRoundTrip) {
  fixtures::TempDir dir;
  const auto g = build_link_graph(kData / "rules_dump.xml");
  g.save(dir / "g.bin");
  EXPECT_TRUE(fs::exists(LinkGraph::sidecar_path(dir / "g.bin")));
  const auto h = LinkGraph::load(dir / "g.bin");
  ASSERT_EQ(h.page_count(), g.page_count());
  ASSERT_EQ(h.edge_count(), g.edge_count());
  for (std::uint32_t i = 0; i < g.page_count(); ++i) {
    EXPECT_EQ(h.page_at(i), g.page_at(i));
    EXPECT_EQ(ids(h.out_links(i), h), ids(g.out_links(i), g));
    EXPECT_EQ(ids(h.in_links(i), h), ids(g.in_links(i), g));
  }
}

TEST(LinkGraph, CorruptFileRejected) {
  fixtures::TempDir dir;
  fixtures::spit(dir / "bad.bin", "NOPE0000");
  EXPECT_THROW(LinkGraph::load(dir / "bad.bin"), Error);
  const auto g = LinkGraph::from_edges({1, 2}, {{1, 2}});
  g.save(dir / "g.bin");
  const auto bytes = fixtures::slurp(dir / "g.bin");
  fixtures::spit(dir / "cut.bin", bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(LinkGraph::load(dir / "cut.bin"), Error);
}

TEST(Relatedness, IdenticalSetsScoreOne) {
  const auto g = LinkGraph::from_edges({1, 2, 3, 4}, {{1, 3}, {2, 3}, {4, 1}, {4, 2}});
  EXPECT_EQ(link_similarity(g, 1, 2), 1.0);
}

TEST(Relatedness, DisjointSetsScoreZero) {
  const auto g = LinkGraph::from_edges({1, 2, 3, 4}, {{1, 3}, {2, 4}, {3, 1}, {4, 2}});
  EXPECT_EQ(link_similarity(g, 1, 2), 0.0);
}

TEST(Relatedness, WorkedExample) {
  EXPECT_NEAR(mw_relatedness(10, 5, 5, 100), 1 - (std::log(10.0) - std::log(5.0)) / (std::log(100.0) - std::log(5.0)),
              1e-15);
  EXPECT_NEAR(mw_relatedness(10, 5, 5, 100), 0.7686, 1e-4);
  EXPECT_EQ(mw_relatedness(10, 5, 5, 100), mw_relatedness(5, 10, 5, 100));
}

TEST(Relatedness, MatchesOracleOnSizes) {
  for (std::size_t a = 1; a < 12; ++a) {
    for (std::size_t b = 1; b < 12; ++b) {
      for (std::size_t o = 0; o <= std::min(a, b); ++o) {
        EXPECT_NEAR(mw_relatedness(a, b, o, 50), fixtures::ref_link_side(a, b, o, 50), 1e-15);
      }
    }
  }
  EXPECT_EQ(mw_relatedness(0, 3, 0, 10), 0.0);
  EXPECT_EQ(mw_relatedness(10, 10, 5, 10), 0.0);
}

TEST(Relatedness, UnknownPageThrows) {
  const auto g = LinkGraph::from_edges({1, 2}, {});
  EXPECT_THROW(link_similarity(g, 1, 7), Error);
}

TEST(Relatedness, ScorerUsesSenses) {
  const auto g = LinkGraph::from_edges({1, 2, 3}, {{1, 3}, {2, 3}, {3, 1}, {3, 2}});
  SenseIndex senses;
  senses.add("alpha", 1);
  senses.add("beta", 2);
  senses.add("gamma", 77);
  const LinkScorer scorer(g, senses);
  EXPECT_EQ(scorer.score("Alpha", "beta"), 1.0);
  EXPECT_FALSE(scorer.score("alpha", "gamma"));
  EXPECT_FALSE(scorer.score("alpha", "delta"));
}
