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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wikivec/error.hpp"
#include "wikivec/util/digest.hpp"

namespace wikivec::cli {

/// Record of one command execution: resolved configuration plus content
/// digests of every file read and written. The "command" and "config"
/// members form a config file that re-runs the command.
class RunManifest {
 public:
  RunManifest(std::string command, nlohmann::ordered_json config)
      : command_(std::move(command)), config_(std::move(config)), start_(std::chrono::steady_clock::now()) {}

  void add_input(const std::filesystem::path& p) { inputs_.push_back(p); }
  void add_output(const std::filesystem::path& p) { outputs_.push_back(p); }
  const std::vector<std::filesystem::path>& inputs() const { return inputs_; }
  const std::vector<std::filesystem::path>& outputs() const { return outputs_; }

  nlohmann::ordered_json to_json() const {
    const auto files = [](const std::vector<std::filesystem::path>& paths) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& p : paths) arr.push_back({{"path", p.string()}, {"digest", "sha256:" + sha256_file(p)}});
      return arr;
    };
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["config"] = config_;
    j["inputs"] = files(inputs_);
    j["outputs"] = files(outputs_);
    j["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return j;
  }

  void write(const std::filesystem::path& path) const {
    const auto j = to_json();
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("cannot write manifest: " + path.string());
  }

 private:
  std::string command_;
  nlohmann::ordered_json config_;
  std::vector<std::filesystem::path> inputs_;
  std::vector<std::filesystem::path> outputs_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace wikivec::cli
