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

// Analogy protocol. A question counts as found in a bucket when all four
// tokens have frequency rank below the bucket cap; found questions are
// answered by analogy_query over the same capped vocabulary.

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "wikivec/error.hpp"
#include "wikivec/eval/sense_index.hpp"
#include "wikivec/text/utf8.hpp"
#include "wikivec/vectors/query.hpp"
#include "wikivec/vectors/text_io.hpp"
#include "wikivec/vectors/vector_set.hpp"

namespace wikivec {

struct AnalogyQuestion {
  std::string a;
  std::string b;
  std::string c;
  std::string d;  // gold answer
  std::string section;
  bool operator==(const AnalogyQuestion&) const = default;
};

/// ": section" header lines, otherwise exactly four tokens per line.
/// Tokens are lowercased.
inline std::vector<AnalogyQuestion> load_analogy_questions(std::istream& in, const std::string& name = "<stream>") {
  std::vector<AnalogyQuestion> out;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (fields[0].starts_with(':')) {
      section = line.substr(line.find(':') + 1);
      section.erase(0, std::min(section.size(), section.find_first_not_of(" \t")));
      section.erase(section.find_last_not_of(" \t\r") + 1);
      continue;
    }
    if (fields.size() != 4) {
      throw FormatError(name, line_no, "expected 4 tokens, found " + std::to_string(fields.size()));
    }
    out.push_back({utf8::to_lower(fields[0]), utf8::to_lower(fields[1]), utf8::to_lower(fields[2]),
                   utf8::to_lower(fields[3]), section});
  }
  if (in.bad()) throw IoError("read failed: " + name);
  return out;
}

inline std::vector<AnalogyQuestion> load_analogy_questions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open questions: " + path.string());
  return load_analogy_questions(in, path.string());
}

/// Rewrites question tokens through a sense index: a token whose surface
/// ('_' read as a space) has a most frequent sense becomes that concept
/// token; others are kept.
inline std::vector<AnalogyQuestion> map_questions(std::vector<AnalogyQuestion> questions, const SenseIndex& senses) {
  const auto map = [&](std::string& token) {
    std::string surface = token;
    std::replace(surface.begin(), surface.end(), '_', ' ');
    if (const auto sense = senses.lookup(surface)) token = concept_token(sense->page_id);
  };
  for (auto& q : questions) {
    map(q.a);
    map(q.b);
    map(q.c);
    map(q.d);
  }
  return questions;
}

struct AnalogyReport {
  std::size_t bucket = 0;  // vocabulary cap by frequency rank
  std::size_t total = 0;   // questions offered
  std::size_t found = 0;
  std::size_t correct = 0;

  /// correct / found; absent when nothing was found.
  std::optional<double> accuracy() const {
    if (found == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(found);
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["bucket"] = bucket;
    j["questions"] = total;
    j["found"] = found;
    j["correct"] = correct;
    if (const auto acc = accuracy()) {
      j["accuracy"] = *acc;
    } else {
      j["accuracy"] = nullptr;
    }
    return j;
  }
};

/// Which questions have all four tokens inside the top `cap` ranks.
inline std::vector<bool> found_mask(const VectorSet& set, const std::vector<AnalogyQuestion>& questions,
                                    std::size_t cap) {
  if (!set.has_frequency_rank()) throw Error("analogy buckets need a frequency-ranked vector set");
  const auto inside = [&](const std::string& t) {
    const auto i = set.index_of(t);
    return i && set.rank(*i) < cap;
  };
  std::vector<bool> mask(questions.size());
  for (std::size_t q = 0; q < questions.size(); ++q) {
    const auto& x = questions[q];
    mask[q] = inside(x.a) && inside(x.b) && inside(x.c) && inside(x.d);
  }
  return mask;
}

/// Scores the questions selected by `mask` against the capped vocabulary.
inline AnalogyReport score_analogy(const VectorSet& set, const std::vector<AnalogyQuestion>& questions,
                                   std::size_t cap, const std::vector<bool>& mask, unsigned workers = 1) {
  AnalogyReport report;
  report.bucket = cap;
  report.total = questions.size();
  std::vector<std::size_t> selected;
  for (std::size_t q = 0; q < questions.size(); ++q) {
    if (mask[q]) selected.push_back(q);
  }
  report.found = selected.size();

  const auto solve = [&](std::size_t q) {
    const auto& x = questions[q];
    const auto answer = try_analogy(set, x.a, x.b, x.c, cap);
    return answer && answer->token == x.d;
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(selected.size(), 1))));
  std::vector<std::size_t> correct(workers, 0);
  const auto run = [&](unsigned w) {
    for (std::size_t i = w; i < selected.size(); i += workers) correct[w] += solve(selected[i]) ? 1 : 0;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  for (const auto c : correct) report.correct += c;
  return report;
}

/// One report per bucket ("Accuracy (All)").
inline std::vector<AnalogyReport> eval_analogy(const VectorSet& set, const std::vector<AnalogyQuestion>& questions,
                                               const std::vector<std::size_t>& buckets, unsigned workers = 1) {
  std::vector<AnalogyReport> reports;
  for (const auto cap : buckets) reports.push_back(score_analogy(set, questions, cap, found_mask(set, questions, cap), workers));
  return reports;
}

/// Per set, per bucket reports restricted to the questions every set finds
/// in that bucket ("Accuracy (Commons)").
inline std::vector<std::vector<AnalogyReport>> eval_analogy_commons(const std::vector<const VectorSet*>& sets,
                                                                    const std::vector<AnalogyQuestion>& questions,
                                                                    const std::vector<std::size_t>& buckets,
                                                                    unsigned workers = 1) {
  if (sets.size() < 2) throw Error("commons evaluation needs at least two vector sets");
  std::vector<std::vector<AnalogyReport>> out(sets.size());
  for (const auto cap : buckets) {
    std::vector<bool> common(questions.size(), true);
    for (const auto* set : sets) {
      const auto mask = found_mask(*set, questions, cap);
      for (std::size_t q = 0; q < questions.size(); ++q) common[q] = common[q] && mask[q];
    }
    for (std::size_t s = 0; s < sets.size(); ++s) out[s].push_back(score_analogy(*sets[s], questions, cap, common, workers));
  }
  return out;
}

}  // namespace wikivec
