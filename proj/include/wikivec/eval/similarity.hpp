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

// Pairwise similarity protocol: score each human-rated pair, count pairs the
// scorer cannot cover, and report Spearman's rho over the covered ones.

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wikivec/error.hpp"
#include "wikivec/eval/sense_index.hpp"
#include "wikivec/eval/spearman.hpp"
#include "wikivec/vectors/query.hpp"
#include "wikivec/vectors/text_io.hpp"
#include "wikivec/vectors/vector_set.hpp"

namespace wikivec {

struct SimilarityPair {
  std::string first;
  std::string second;
  double human = 0.0;
  bool operator==(const SimilarityPair&) const = default;
};

struct SimilarityDataset {
  std::string name;
  std::vector<SimilarityPair> pairs;
};

/// One pair per line: two terms and a score, separated by tabs, commas or
/// (failing both) whitespace. A first line whose score does not parse is a
/// header and is skipped; '#' lines are comments.
inline SimilarityDataset load_similarity_dataset(std::istream& in, std::string name) {
  SimilarityDataset ds{std::move(name), {}};
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.starts_with('#')) continue;
    std::vector<std::string> fields;
    const char sep = line.find('\t') != std::string::npos ? '\t' : line.find(',') != std::string::npos ? ',' : ' ';
    if (sep == ' ') {
      for (const auto f : detail::split_fields(line)) fields.emplace_back(f);
    } else {
      std::size_t start = 0;
      while (true) {
        const auto cut = line.find(sep, start);
        std::string f = line.substr(start, cut == std::string::npos ? std::string::npos : cut - start);
        f.erase(0, std::min(f.size(), f.find_first_not_of(" \t")));
        f.erase(f.find_last_not_of(" \t") + 1);
        fields.push_back(std::move(f));
        if (cut == std::string::npos) break;
        start = cut + 1;
      }
    }
    double score = 0.0;
    const bool ok = fields.size() == 3 && !fields[0].empty() && !fields[1].empty() &&
                    detail::parse_number(std::string_view(fields[2]), score);
    if (!ok) {
      if (first_content) {
        first_content = false;
        continue;
      }
      throw FormatError(ds.name, line_no, "expected two terms and a numeric score");
    }
    first_content = false;
    ds.pairs.push_back({std::move(fields[0]), std::move(fields[1]), score});
  }
  if (in.bad()) throw IoError("read failed: " + ds.name);
  return ds;
}

/// Dataset name is the file stem.
inline SimilarityDataset load_similarity_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open similarity dataset: " + path.string());
  return load_similarity_dataset(in, path.stem().string());
}

/// Anything that can score a pair of surface terms, or decline.
class PairScorer {
 public:
  virtual ~PairScorer() = default;
  virtual std::string name() const = 0;
  virtual std::optional<double> score(std::string_view first, std::string_view second) const = 0;
};

/// Cosine between the tokens the sense index maps the surfaces to.
class VectorScorer final : public PairScorer {
 public:
  VectorScorer(const VectorSet& set, const SenseIndex* senses, std::string name = "vectors")
      : set_(set), senses_(senses), name_(std::move(name)) {}

  std::string name() const override { return name_; }

  std::string token_for(std::string_view surface) const {
    return senses_ != nullptr ? senses_->map_token(surface) : normalize_surface(surface);
  }

  std::optional<double> score(std::string_view first, std::string_view second) const override {
    const auto a = set_.index_of(token_for(first));
    const auto b = set_.index_of(token_for(second));
    if (!a || !b) return std::nullopt;
    return cosine(set_.row(*a), set_.row(*b));
  }

 private:
  const VectorSet& set_;
  const SenseIndex* senses_;
  std::string name_;
};

struct SimilarityReport {
  std::string dataset;
  std::string scorer;
  std::size_t pairs_total = 0;
  std::size_t not_found = 0;
  std::optional<double> rho;  // absent with fewer than 2 found pairs or constant scores

  std::size_t evaluated() const { return pairs_total - not_found; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["dataset"] = dataset;
    j["scorer"] = scorer;
    j["pairs"] = pairs_total;
    j["not_found"] = not_found;
    if (rho) {
      j["rho"] = *rho;
    } else {
      j["rho"] = nullptr;
    }
    return j;
  }
};

namespace detail {

inline std::optional<double> rho_of(const std::vector<double>& system, const std::vector<double>& human) {
  if (system.size() < 2) return std::nullopt;
  return spearman(system, human);
}

}  // namespace detail

inline SimilarityReport eval_similarity(const PairScorer& scorer, const SimilarityDataset& data) {
  SimilarityReport report;
  report.dataset = data.name;
  report.scorer = scorer.name();
  report.pairs_total = data.pairs.size();
  std::vector<double> system;
  std::vector<double> human;
  for (const auto& p : data.pairs) {
    if (const auto s = scorer.score(p.first, p.second)) {
      system.push_back(*s);
      human.push_back(p.human);
    } else {
      ++report.not_found;
    }
  }
  report.rho = detail::rho_of(system, human);
  return report;
}

inline SimilarityReport eval_similarity(const VectorSet& set, const SimilarityDataset& data,
                                        const SenseIndex* senses) {
  return eval_similarity(VectorScorer(set, senses), data);
}

/// Per dataset: the pairs every scorer covers, and each scorer's rho on them.
struct CommonSubsetRow {
  std::string dataset;
  std::size_t pairs_total = 0;
  std::size_t pairs_common = 0;
  std::vector<std::optional<double>> rho;  // one per scorer
};

struct CommonSubsetTable {
  std::vector<std::string> scorers;
  std::vector<CommonSubsetRow> rows;
  std::vector<std::string> skipped;  // datasets whose shared subset had < 2 pairs

  /// Mean rho per scorer over the evaluated rows.
  std::vector<std::optional<double>> average() const {
    std::vector<std::optional<double>> out(scorers.size());
    for (std::size_t s = 0; s < scorers.size(); ++s) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& row : rows) {
        if (row.rho[s]) sum += *row.rho[s], ++n;
      }
      if (n > 0) out[s] = sum / static_cast<double>(n);
    }
    return out;
  }

  nlohmann::ordered_json to_json() const {
    const auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nullptr; };
    nlohmann::ordered_json j;
    j["scorers"] = scorers;
    auto& rs = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json r;
      r["dataset"] = row.dataset;
      r["pairs"] = row.pairs_total;
      r["common"] = row.pairs_common;
      auto& rho = r["rho"] = nlohmann::ordered_json::array();
      for (const auto& v : row.rho) rho.push_back(opt(v));
      rs.push_back(std::move(r));
    }
    auto& avg = j["average"] = nlohmann::ordered_json::array();
    for (const auto& v : average()) avg.push_back(opt(v));
    j["skipped"] = skipped;
    return j;
  }
};

inline CommonSubsetTable common_subset_eval(const std::vector<const PairScorer*>& scorers,
                                            const std::vector<SimilarityDataset>& datasets) {
  if (scorers.size() < 2) throw Error("common-subset evaluation needs at least two scorers");
  CommonSubsetTable table;
  for (const auto* s : scorers) table.scorers.push_back(s->name());
  for (const auto& data : datasets) {
    const std::size_t n = data.pairs.size();
    std::vector<std::vector<std::optional<double>>> scores(scorers.size(), std::vector<std::optional<double>>(n));
    std::vector<bool> common(n, true);
    for (std::size_t s = 0; s < scorers.size(); ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        scores[s][i] = scorers[s]->score(data.pairs[i].first, data.pairs[i].second);
        common[i] = common[i] && scores[s][i].has_value();
      }
    }
    CommonSubsetRow row{data.name, n, 0, {}};
    for (std::size_t i = 0; i < n; ++i) row.pairs_common += common[i] ? 1 : 0;
    if (row.pairs_common < 2) {
      table.skipped.push_back(data.name);
      continue;
    }
    for (std::size_t s = 0; s < scorers.size(); ++s) {
      std::vector<double> system;
      std::vector<double> human;
      for (std::size_t i = 0; i < n; ++i) {
        if (!common[i]) continue;
        system.push_back(*scores[s][i]);
        human.push_back(data.pairs[i].human);
      }
      row.rho.push_back(spearman(system, human));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace wikivec
