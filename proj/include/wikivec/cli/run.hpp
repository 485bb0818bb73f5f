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

// Command-line front end. Every subcommand keeps its parameters in a plain
// struct that serializes to the "config" object of the run manifest; a
// manifest (or any JSON file of the same shape) passed with --config
// supplies defaults that explicit flags override.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error. Failures print a
// JSON object {"error": kind, "message": text} on the error stream.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wikivec/cli/manifest.hpp"
#include "wikivec/embed/model.hpp"
#include "wikivec/embed/train.hpp"
#include "wikivec/embed/vocab.hpp"
#include "wikivec/error.hpp"
#include "wikivec/eval/analogy.hpp"
#include "wikivec/eval/sense_index.hpp"
#include "wikivec/eval/similarity.hpp"
#include "wikivec/link/graph.hpp"
#include "wikivec/link/relatedness.hpp"
#include "wikivec/vectors/query.hpp"
#include "wikivec/vectors/text_io.hpp"
#include "wikivec/wiki/corpus.hpp"

namespace wikivec::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Bad invocation: unknown flag, missing file, contradictory options.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kWorkersEnv = "WIKIVEC_WORKERS";

namespace detail {

inline unsigned default_workers() { return 1; }

inline std::string percent(const std::optional<double>& acc) {
  if (!acc) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * *acc);
  return buf;
}

inline std::string fixed(const std::optional<double>& v, int digits = 4) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

inline std::string join(const std::vector<std::string>& parts, char sep = ',') {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

/// Refuses to write over any input file.
inline void ensure_distinct(const fs::path& out, const std::vector<fs::path>& inputs) {
  std::error_code ec;
  for (const auto& in : inputs) {
    if (fs::exists(out, ec) && fs::equivalent(out, in, ec)) {
      throw UsageError("output " + out.string() + " would overwrite input " + in.string());
    }
  }
}

inline void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

/// Files of a similarity directory (or the single file given), sorted.
inline std::vector<fs::path> dataset_files(const fs::path& p) {
  if (!fs::is_directory(p)) return {p};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(p)) {
    if (entry.is_regular_file() && !entry.path().filename().string().starts_with('.')) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline std::string scalar_to_arg(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace detail

/// Expands a --config JSON file into argument form: the command words,
/// then one "--key=value" per config entry not also given explicitly, then
/// the remaining arguments.
inline std::vector<std::string> expand_config(std::vector<std::string> args,
                                              const std::vector<std::vector<std::string>>& commands) {
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].starts_with("--config=")) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!config_path) return args;

  std::ifstream in(*config_path);
  if (!in) throw UsageError("cannot open config file: " + *config_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("invalid config file " + *config_path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  const nlohmann::json config = doc.contains("config") ? doc["config"] : doc;
  if (!config.is_object()) throw UsageError("config member must be a JSON object");

  // Command words already on the command line.
  std::vector<std::string> given;
  for (const auto& cmd : commands) {
    if (args.size() >= cmd.size() && std::equal(cmd.begin(), cmd.end(), args.begin()) && cmd.size() > given.size()) {
      given = cmd;
    }
  }
  std::vector<std::string> words = given;
  if (doc.contains("command")) {
    if (!doc["command"].is_string()) throw UsageError("config command must be a string");
    std::vector<std::string> from_file;
    std::istringstream ss(doc["command"].get<std::string>());
    for (std::string w; ss >> w;) from_file.push_back(w);
    if (!given.empty() && given != from_file) {
      throw UsageError("config file is for '" + doc["command"].get<std::string>() + "', not '" +
                       detail::join(given, ' ') + "'");
    }
    words = from_file;
  }
  if (words.empty()) throw UsageError("config file does not name a command");

  const auto given_on_command_line = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.starts_with(flag + "=") || (key == "header" && a == "--no-header");
    });
  };
  std::vector<std::string> out = words;
  for (const auto& [key, value] : config.items()) {
    if (value.is_null() || given_on_command_line(key)) continue;
    // json::empty() is false for every string, so test strings directly.
    if (value.is_string() ? value.get_ref<const std::string&>().empty() : value.is_array() && value.empty()) continue;
    if (value.is_array()) {
      std::vector<std::string> parts;
      for (const auto& v : value) parts.push_back(detail::scalar_to_arg(v));
      out.push_back("--" + key + "=" + detail::join(parts));
    } else if (value.is_object()) {
      throw UsageError("config value for '" + key + "' must be a scalar or list");
    } else {
      out.push_back("--" + key + "=" + detail::scalar_to_arg(value));
    }
  }
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(given.size()), args.end());
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand parameter blocks.

struct IngestParams {
  std::string dump;
  std::string out;
  std::string mode = "standard";
  bool ordered = false;
  unsigned workers = detail::default_workers();
  std::string sense_index;
  std::string stats;
  std::string manifest;

  json to_json() const {
    return {{"dump", dump}, {"out", out}, {"mode", mode}, {"ordered", ordered}, {"workers", workers},
            {"sense-index", sense_index}, {"stats", stats}};
  }
};

struct TrainParams {
  std::string corpus;
  std::string out;
  TrainingConfig config;
  std::string init;
  bool header = true;
  std::string manifest;

  json to_json() const {
    return {{"corpus", corpus},
            {"out", out},
            {"dim", config.dim},
            {"window", config.window},
            {"negative", config.negatives},
            {"epochs", config.epochs},
            {"min-count", config.min_count},
            {"lr", config.lr_initial},
            {"subsample", config.subsample_t},
            {"seed", config.seed},
            {"workers", config.workers},
            {"init", init},
            {"header", header}};
  }
};

struct SimilarParams {
  std::string vectors;
  std::string query;
  std::size_t k = 10;
  bool as_json = false;
  std::string manifest;

  json to_json() const { return {{"vectors", vectors}, {"query", query}, {"k", k}, {"json", as_json}}; }
};

struct AnalogyParams {
  std::string vectors;
  std::string a;
  std::string b;
  std::string c;
  bool as_json = false;
  std::string manifest;

  json to_json() const { return {{"vectors", vectors}, {"a", a}, {"b", b}, {"c", c}, {"json", as_json}}; }
};

struct EvalAnalogyParams {
  std::vector<std::string> vectors;
  std::string questions;
  std::vector<std::size_t> buckets{30000, 300000, 3000000};
  bool commons = false;
  std::string sense_index;
  unsigned workers = detail::default_workers();
  std::string out;
  bool as_json = false;
  std::string manifest;

  json to_json() const {
    return {{"vectors", vectors}, {"questions", questions}, {"buckets", buckets}, {"commons", commons},
            {"sense-index", sense_index}, {"workers", workers}, {"out", out}, {"json", as_json}};
  }
};

struct EvalSimilarityParams {
  std::vector<std::string> vectors;
  std::string pairs;
  std::string sense_index;
  std::string graph;
  bool common_subset = false;
  std::string out;
  bool as_json = false;
  std::string manifest;

  json to_json() const {
    return {{"vectors", vectors}, {"pairs", pairs},     {"sense-index", sense_index},
            {"graph", graph},     {"common-subset", common_subset}, {"out", out}, {"json", as_json}};
  }
};

struct BaselineBuildParams {
  std::string dump;
  std::string out;
  std::string manifest;

  json to_json() const { return {{"dump", dump}, {"out", out}}; }
};

struct BaselineSimParams {
  std::string graph;
  PageId a = 0;
  PageId b = 0;
  bool as_json = false;
  std::string manifest;

  json to_json() const { return {{"graph", graph}, {"a", a}, {"b", b}, {"json", as_json}}; }
};

struct StatsParams {
  std::string corpus;
  std::string vectors;
  std::string graph;
  std::uint64_t min_count = 5;
  std::string manifest;

  json to_json() const {
    return {{"corpus", corpus}, {"vectors", vectors}, {"graph", graph}, {"min-count", min_count}};
  }
};

// ---------------------------------------------------------------------------
// Subcommand bodies.

namespace detail {

inline void finish(RunManifest& manifest, const std::string& explicit_path, const std::string& out_path) {
  std::string path = explicit_path;
  if (path.empty() && !out_path.empty()) path = out_path + ".manifest.json";
  if (!path.empty()) manifest.write(path);
}

inline void run_ingest(const IngestParams& p, std::ostream& out) {
  const CorpusMode mode = parse_mode(p.mode);
  RunManifest manifest("ingest", p.to_json());
  manifest.add_input(p.dump);
  ensure_distinct(p.out, {p.dump});
  const IngestResult result = build_corpus(fs::path(p.dump), fs::path(p.out), {mode, p.workers, p.ordered});
  manifest.add_output(p.out);
  if (!p.sense_index.empty()) {
    std::ofstream s(p.sense_index, std::ios::trunc);
    if (!s) throw IoError("cannot write " + p.sense_index);
    write_anchor_stats(result.anchor_stats, s);
    s.close();
    if (!s) throw IoError("cannot write " + p.sense_index);
    manifest.add_output(p.sense_index);
  }
  const json stats = result.stats.to_json();
  if (!p.stats.empty()) {
    write_json_file(p.stats, stats);
    manifest.add_output(p.stats);
  }
  out << stats.dump(2) << '\n';
  finish(manifest, p.manifest, p.out);
}

inline void run_train(const TrainParams& p, std::ostream& out, std::ostream& err) {
  p.config.validate();
  RunManifest manifest("train", p.to_json());
  manifest.add_input(p.corpus);
  std::vector<fs::path> inputs{p.corpus};
  std::optional<VectorSet> pretrained;
  if (!p.init.empty()) {
    pretrained = load_text(fs::path(p.init));
    manifest.add_input(p.init);
    inputs.emplace_back(p.init);
  }
  ensure_distinct(p.out, inputs);
  Vocabulary vocab = build_vocab(fs::path(p.corpus), p.config.min_count);
  if (vocab.empty()) throw Error("vocabulary is empty: no token reaches min-count " + std::to_string(p.config.min_count));
  std::size_t concepts = 0;
  for (const auto& e : vocab.entries()) concepts += parse_concept_token(e.token) ? 1 : 0;
  EmbeddingModel model = init_model(std::move(vocab), p.config, pretrained ? &*pretrained : nullptr);
  train(fs::path(p.corpus), model, p.config, [&](const EpochReport& r) {
    err << "epoch " << r.epoch << "/" << p.config.epochs << " words " << r.words_seen << " lr " << r.learning_rate
        << '\n';
  });
  save_text(to_vector_set(model), fs::path(p.out), p.header);
  manifest.add_output(p.out);
  out << json{{"vocab_size", model.vocab.size()},
              {"concepts", concepts},
              {"words", model.vocab.size() - concepts},
              {"corpus_tokens", model.vocab.total_tokens()},
              {"dim", model.dim}}
             .dump(2)
      << '\n';
  finish(manifest, p.manifest, p.out);
}

inline void run_similar(const SimilarParams& p, std::ostream& out) {
  RunManifest manifest("similar", p.to_json());
  manifest.add_input(p.vectors);
  const VectorSet set = load_text(fs::path(p.vectors));
  const auto hits = nearest_to_token(set, p.query, p.k);
  if (p.as_json) {
    json arr = json::array();
    for (const auto& h : hits) arr.push_back({{"token", h.token}, {"cosine", h.cosine}});
    out << json{{"query", p.query}, {"neighbors", arr}}.dump(2) << '\n';
  } else {
    out << "rank\ttoken\tcosine\n";
    for (std::size_t i = 0; i < hits.size(); ++i) out << i + 1 << '\t' << hits[i].token << '\t' << fixed(hits[i].cosine) << '\n';
  }
  finish(manifest, p.manifest, "");
}

inline void run_analogy(const AnalogyParams& p, std::ostream& out) {
  RunManifest manifest("analogy", p.to_json());
  manifest.add_input(p.vectors);
  const VectorSet set = load_text(fs::path(p.vectors));
  const auto best = try_analogy(set, p.a, p.b, p.c);
  if (!best) throw Error("analogy has no answer: no candidate token or zero query vector");
  if (p.as_json) {
    out << json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"answer", best->token}, {"cosine", best->cosine}}.dump(2) << '\n';
  } else {
    out << best->token << '\t' << fixed(best->cosine) << '\n';
  }
  finish(manifest, p.manifest, "");
}

inline void run_eval_analogy(const EvalAnalogyParams& p, std::ostream& out) {
  if (p.commons && p.vectors.size() < 2) throw UsageError("--commons needs at least two vector sets");
  if (p.buckets.empty()) throw UsageError("--buckets needs at least one cap");
  RunManifest manifest("eval analogy", p.to_json());
  std::vector<VectorSet> sets;
  for (const auto& v : p.vectors) {
    manifest.add_input(v);
    sets.push_back(load_text(fs::path(v)));
  }
  manifest.add_input(p.questions);
  auto questions = load_analogy_questions(fs::path(p.questions));
  if (!p.sense_index.empty()) {
    manifest.add_input(p.sense_index);
    questions = map_questions(std::move(questions), load_sense_index(fs::path(p.sense_index)));
  }

  std::vector<std::vector<AnalogyReport>> all;
  for (const auto& s : sets) all.push_back(eval_analogy(s, questions, p.buckets, p.workers));
  std::vector<std::vector<AnalogyReport>> commons;
  if (p.commons) {
    std::vector<const VectorSet*> ptrs;
    for (const auto& s : sets) ptrs.push_back(&s);
    commons = eval_analogy_commons(ptrs, questions, p.buckets, p.workers);
  }

  json report;
  report["questions"] = questions.size();
  const auto section = [&](const std::vector<std::vector<AnalogyReport>>& rs) {
    json arr = json::array();
    for (std::size_t s = 0; s < rs.size(); ++s) {
      json buckets = json::array();
      for (const auto& r : rs[s]) buckets.push_back(r.to_json());
      arr.push_back({{"vectors", p.vectors[s]}, {"buckets", buckets}});
    }
    return arr;
  };
  report["all"] = section(all);
  if (p.commons) report["commons"] = section(commons);

  if (p.as_json) {
    out << report.dump(2) << '\n';
  } else {
    out << "vectors\tscoring\tbucket\tfound\tcorrect\taccuracy\n";
    const auto rows = [&](const std::vector<std::vector<AnalogyReport>>& rs, const char* label) {
      for (std::size_t s = 0; s < rs.size(); ++s) {
        for (const auto& r : rs[s]) {
          out << p.vectors[s] << '\t' << label << '\t' << r.bucket << '\t' << r.found << '\t' << r.correct << '\t'
              << percent(r.accuracy()) << '\n';
        }
      }
    };
    rows(all, "all");
    if (p.commons) rows(commons, "commons");
  }
  if (!p.out.empty()) {
    write_json_file(p.out, report);
    manifest.add_output(p.out);
  }
  finish(manifest, p.manifest, p.out);
}

inline void run_eval_similarity(const EvalSimilarityParams& p, std::ostream& out) {
  const std::size_t scorers_n = p.vectors.size() + (p.graph.empty() ? 0 : 1);
  if (scorers_n == 0) throw UsageError("give --vectors and/or --graph");
  if (p.common_subset && scorers_n < 2) throw UsageError("--common-subset needs at least two scorers");
  if (!p.graph.empty() && p.sense_index.empty()) throw UsageError("--graph needs --sense-index to map terms to pages");
  RunManifest manifest("eval similarity", p.to_json());

  std::vector<VectorSet> sets;
  for (const auto& v : p.vectors) {
    manifest.add_input(v);
    sets.push_back(load_text(fs::path(v)));
  }
  std::optional<SenseIndex> senses;
  if (!p.sense_index.empty()) {
    manifest.add_input(p.sense_index);
    senses = load_sense_index(fs::path(p.sense_index));
  }
  std::optional<LinkGraph> graph;
  if (!p.graph.empty()) {
    manifest.add_input(p.graph);
    graph = LinkGraph::load(p.graph);
  }
  std::vector<SimilarityDataset> datasets;
  for (const auto& f : dataset_files(p.pairs)) {
    manifest.add_input(f);
    datasets.push_back(load_similarity_dataset(f));
  }

  std::vector<std::unique_ptr<PairScorer>> scorers;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    scorers.push_back(std::make_unique<VectorScorer>(sets[s], senses ? &*senses : nullptr, p.vectors[s]));
  }
  if (graph) scorers.push_back(std::make_unique<LinkScorer>(*graph, *senses, p.graph));

  json report;
  json per = json::array();
  std::vector<SimilarityReport> reports;
  for (const auto& scorer : scorers) {
    for (const auto& d : datasets) {
      reports.push_back(eval_similarity(*scorer, d));
      per.push_back(reports.back().to_json());
    }
  }
  report["reports"] = per;
  std::optional<CommonSubsetTable> table;
  if (p.common_subset) {
    std::vector<const PairScorer*> ptrs;
    for (const auto& s : scorers) ptrs.push_back(s.get());
    table = common_subset_eval(ptrs, datasets);
    report["common_subset"] = table->to_json();
  }

  if (p.as_json) {
    out << report.dump(2) << '\n';
  } else {
    out << "scorer\tdataset\tpairs\tnot_found\trho\n";
    for (const auto& r : reports) {
      out << r.scorer << '\t' << r.dataset << '\t' << r.pairs_total << '\t' << r.not_found << '\t' << fixed(r.rho)
          << '\n';
    }
    if (table) {
      out << "\ncommon subset\ndataset\tcommon";
      for (const auto& s : table->scorers) out << '\t' << s;
      out << '\n';
      for (const auto& row : table->rows) {
        out << row.dataset << '\t' << row.pairs_common;
        for (const auto& r : row.rho) out << '\t' << fixed(r);
        out << '\n';
      }
      out << "average\t-";
      for (const auto& r : table->average()) out << '\t' << fixed(r);
      out << '\n';
      for (const auto& s : table->skipped) out << "skipped " << s << ": fewer than 2 shared pairs\n";
    }
  }
  if (!p.out.empty()) {
    write_json_file(p.out, report);
    manifest.add_output(p.out);
  }
  finish(manifest, p.manifest, p.out);
}

inline void run_baseline_build(const BaselineBuildParams& p, std::ostream& out) {
  RunManifest manifest("baseline build", p.to_json());
  manifest.add_input(p.dump);
  ensure_distinct(p.out, {p.dump});
  const LinkGraph graph = build_link_graph(fs::path(p.dump));
  graph.save(p.out);
  manifest.add_output(p.out);
  manifest.add_output(LinkGraph::sidecar_path(p.out));
  out << json{{"page_count", graph.page_count()}, {"edge_count", graph.edge_count()}}.dump(2) << '\n';
  finish(manifest, p.manifest, p.out);
}

inline void run_baseline_sim(const BaselineSimParams& p, std::ostream& out) {
  RunManifest manifest("baseline sim", p.to_json());
  manifest.add_input(p.graph);
  const LinkGraph graph = LinkGraph::load(p.graph);
  const double score = link_similarity(graph, p.a, p.b);
  if (p.as_json) {
    out << json{{"a", p.a}, {"b", p.b}, {"similarity", score}}.dump(2) << '\n';
  } else {
    out << fixed(score, 6) << '\n';
  }
  finish(manifest, p.manifest, "");
}

inline void run_stats(const StatsParams& p, std::ostream& out) {
  if (p.corpus.empty() && p.vectors.empty() && p.graph.empty()) {
    throw UsageError("stats needs --corpus, --vectors or --graph");
  }
  RunManifest manifest("stats", p.to_json());
  json report;
  if (!p.corpus.empty()) {
    manifest.add_input(p.corpus);
    std::ifstream in(p.corpus, std::ios::binary);
    if (!in) throw IoError("cannot open corpus: " + p.corpus);
    std::size_t lines = 0;
    std::uint64_t tokens = 0;
    std::uint64_t concept_tokens = 0;
    std::string line;
    while (std::getline(in, line)) {
      ++lines;
      for_each_field(line, [&](std::string_view t) {
        ++tokens;
        concept_tokens += parse_concept_token(t) ? 1 : 0;
      });
    }
    in.clear();
    in.seekg(0);
    const Vocabulary vocab = build_vocab(in, p.min_count);
    std::size_t concepts = 0;
    for (const auto& e : vocab.entries()) concepts += parse_concept_token(e.token) ? 1 : 0;
    report["corpus"] = {{"lines", lines},
                        {"tokens", tokens},
                        {"concept_tokens", concept_tokens},
                        {"min_count", p.min_count},
                        {"vocab_size", vocab.size()},
                        {"vocab_concepts", concepts}};
  }
  if (!p.vectors.empty()) {
    manifest.add_input(p.vectors);
    const VectorSet set = load_text(fs::path(p.vectors));
    std::size_t concepts = 0;
    for (const auto& t : set.tokens()) concepts += parse_concept_token(t) ? 1 : 0;
    report["vectors"] = {{"count", set.size()}, {"dim", set.dim()}, {"concepts", concepts}};
  }
  if (!p.graph.empty()) {
    manifest.add_input(p.graph);
    const LinkGraph graph = LinkGraph::load(p.graph);
    report["graph"] = {{"page_count", graph.page_count()}, {"edge_count", graph.edge_count()}};
  }
  out << report.dump(2) << '\n';
  finish(manifest, p.manifest, "");
}

inline void emit_error(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wikivec: concept-annotated corpora, joint word/concept embeddings, evaluation", "wikivec"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config or run manifest supplying defaults for the command");

  const auto add_manifest = [](CLI::App* sub, std::string& dest) {
    sub->add_option("--manifest", dest, "Run manifest path (default: <out>.manifest.json when --out is given)");
  };
  const auto add_workers = [](CLI::App* sub, unsigned& dest) {
    sub->add_option("--workers", dest, "Worker threads")->envname(kWorkersEnv)->check(CLI::Range(1u, 4096u));
  };
  const CLI::Validator mode_check = CLI::IsMember({"standard", "heuristic", "anchors-only"});

  IngestParams ingest;
  auto* s_ingest = app.add_subcommand("ingest", "Compile a MediaWiki XML dump into a corpus file");
  s_ingest->add_option("--dump", ingest.dump, "MediaWiki XML export")->required()->check(CLI::ExistingFile);
  s_ingest->add_option("--out", ingest.out, "Corpus output path")->required();
  s_ingest->add_option("--mode", ingest.mode, "standard | heuristic | anchors-only")->check(mode_check);
  s_ingest->add_flag("--ordered", ingest.ordered, "Document order regardless of worker count");
  add_workers(s_ingest, ingest.workers);
  s_ingest->add_option("--sense-index", ingest.sense_index, "Write anchor statistics (surface, page, count) here");
  s_ingest->add_option("--stats", ingest.stats, "Write ingest statistics JSON here");
  add_manifest(s_ingest, ingest.manifest);

  TrainParams tr;
  auto* s_train = app.add_subcommand("train", "Train skip-gram negative-sampling vectors on a corpus");
  s_train->add_option("--corpus", tr.corpus, "Corpus file")->required()->check(CLI::ExistingFile);
  s_train->add_option("--out", tr.out, "Vector output path")->required();
  s_train->add_option("--dim", tr.config.dim, "Dimensionality")->check(CLI::PositiveNumber);
  s_train->add_option("--window", tr.config.window, "Maximum context offset")->check(CLI::PositiveNumber);
  s_train->add_option("--negative", tr.config.negatives, "Noise samples per positive")->check(CLI::PositiveNumber);
  s_train->add_option("--epochs", tr.config.epochs, "Passes over the corpus")->check(CLI::NonNegativeNumber);
  s_train->add_option("--min-count", tr.config.min_count, "Vocabulary cutoff")->check(CLI::PositiveNumber);
  s_train->add_option("--lr", tr.config.lr_initial, "Initial learning rate")->check(CLI::PositiveNumber);
  s_train->add_option("--subsample", tr.config.subsample_t, "Subsampling threshold (0 disables)")
      ->check(CLI::NonNegativeNumber);
  s_train->add_option("--seed", tr.config.seed, "RNG seed");
  add_workers(s_train, tr.config.workers);
  s_train->add_option("--init", tr.init, "Pretrained vectors for fine-tuning")->check(CLI::ExistingFile);
  s_train->add_flag("--header,!--no-header", tr.header, "Write the count/dim header line");
  add_manifest(s_train, tr.manifest);

  SimilarParams sim;
  auto* s_similar = app.add_subcommand("similar", "Nearest neighbors of a token by cosine");
  s_similar->add_option("--vectors", sim.vectors, "Vector file")->required()->check(CLI::ExistingFile);
  s_similar->add_option("--query", sim.query, "Query token")->required();
  s_similar->add_option("-k,--k", sim.k, "Number of neighbors")->check(CLI::PositiveNumber);
  s_similar->add_flag("--json", sim.as_json, "JSON output");
  add_manifest(s_similar, sim.manifest);

  AnalogyParams ana;
  auto* s_analogy = app.add_subcommand("analogy", "Answer a is to b as c is to ?");
  s_analogy->add_option("--vectors", ana.vectors, "Vector file")->required()->check(CLI::ExistingFile);
  s_analogy->add_option("--a", ana.a)->required();
  s_analogy->add_option("--b", ana.b)->required();
  s_analogy->add_option("--c", ana.c)->required();
  s_analogy->add_flag("--json", ana.as_json, "JSON output");
  add_manifest(s_analogy, ana.manifest);

  auto* s_eval = app.add_subcommand("eval", "Evaluation protocols");
  s_eval->require_subcommand(1);
  EvalAnalogyParams ea;
  auto* s_ea = s_eval->add_subcommand("analogy", "Analogy accuracy per frequency bucket");
  s_ea->add_option("--vectors", ea.vectors, "Vector files, comma separated")
      ->required()
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->check(CLI::ExistingFile);
  s_ea->add_option("--questions", ea.questions, "Analogy question file")->required()->check(CLI::ExistingFile);
  s_ea->add_option("--buckets", ea.buckets, "Vocabulary caps, comma separated")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->check(CLI::PositiveNumber);
  s_ea->add_flag("--commons", ea.commons, "Also score every set on the commonly found questions");
  s_ea->add_option("--sense-index", ea.sense_index, "Map question terms to concepts by most frequent sense")
      ->check(CLI::ExistingFile);
  add_workers(s_ea, ea.workers);
  s_ea->add_option("--out", ea.out, "JSON report path");
  s_ea->add_flag("--json", ea.as_json, "JSON output");
  add_manifest(s_ea, ea.manifest);

  EvalSimilarityParams es;
  auto* s_es = s_eval->add_subcommand("similarity", "Spearman correlation on similarity datasets");
  s_es->add_option("--vectors", es.vectors, "Vector files, comma separated")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->check(CLI::ExistingFile);
  s_es->add_option("--pairs", es.pairs, "Dataset file or directory")->required()->check(CLI::ExistingPath);
  s_es->add_option("--sense-index", es.sense_index, "Anchor statistics from ingest")->check(CLI::ExistingFile);
  s_es->add_option("--graph", es.graph, "Link graph; adds the link-structure scorer")->check(CLI::ExistingFile);
  s_es->add_flag("--common-subset", es.common_subset, "Score every scorer on the pairs all of them cover");
  s_es->add_option("--out", es.out, "JSON report path");
  s_es->add_flag("--json", es.as_json, "JSON output");
  add_manifest(s_es, es.manifest);

  auto* s_base = app.add_subcommand("baseline", "Link-structure baseline");
  s_base->require_subcommand(1);
  BaselineBuildParams bb;
  auto* s_bb = s_base->add_subcommand("build", "Build the page link graph from a dump");
  s_bb->add_option("--dump", bb.dump, "MediaWiki XML export")->required()->check(CLI::ExistingFile);
  s_bb->add_option("--out", bb.out, "Graph output path")->required();
  add_manifest(s_bb, bb.manifest);
  BaselineSimParams bs;
  auto* s_bs = s_base->add_subcommand("sim", "Link relatedness of two pages");
  s_bs->add_option("--graph", bs.graph, "Graph file")->required()->check(CLI::ExistingFile);
  s_bs->add_option("--a", bs.a, "Page id")->required();
  s_bs->add_option("--b", bs.b, "Page id")->required();
  s_bs->add_flag("--json", bs.as_json, "JSON output");
  add_manifest(s_bs, bs.manifest);

  StatsParams st;
  auto* s_stats = app.add_subcommand("stats", "Summaries of corpus, vector and graph files");
  s_stats->add_option("--corpus", st.corpus, "Corpus file")->check(CLI::ExistingFile);
  s_stats->add_option("--vectors", st.vectors, "Vector file")->check(CLI::ExistingFile);
  s_stats->add_option("--graph", st.graph, "Graph file")->check(CLI::ExistingFile);
  s_stats->add_option("--min-count", st.min_count, "Vocabulary cutoff for corpus stats")->check(CLI::PositiveNumber);
  add_manifest(s_stats, st.manifest);

  const std::vector<std::vector<std::string>> commands = {
      {"ingest"}, {"train"}, {"similar"}, {"analogy"}, {"eval", "analogy"}, {"eval", "similarity"},
      {"baseline", "build"}, {"baseline", "sim"}, {"stats"}, {"eval"}, {"baseline"}};

  try {
    args = expand_config(std::move(args), commands);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    detail::emit_error(err, "usage", e.what());
    return 2;
  } catch (const UsageError& e) {
    detail::emit_error(err, "usage", e.what());
    return 2;
  }

  try {
    if (s_ingest->parsed()) {
      detail::run_ingest(ingest, out);
    } else if (s_train->parsed()) {
      detail::run_train(tr, out, err);
    } else if (s_similar->parsed()) {
      detail::run_similar(sim, out);
    } else if (s_analogy->parsed()) {
      detail::run_analogy(ana, out);
    } else if (s_ea->parsed()) {
      detail::run_eval_analogy(ea, out);
    } else if (s_es->parsed()) {
      detail::run_eval_similarity(es, out);
    } else if (s_bb->parsed()) {
      detail::run_baseline_build(bb, out);
    } else if (s_bs->parsed()) {
      detail::run_baseline_sim(bs, out);
    } else if (s_stats->parsed()) {
      detail::run_stats(st, out);
    }
  } catch (const UsageError& e) {
    detail::emit_error(err, "usage", e.what());
    return 2;
  } catch (const NotInVocabulary& e) {
    detail::emit_error(err, "not_in_vocabulary", e.what());
    return 1;
  } catch (const std::exception& e) {
    detail::emit_error(err, "runtime", e.what());
    return 1;
  }
  return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace wikivec::cli
