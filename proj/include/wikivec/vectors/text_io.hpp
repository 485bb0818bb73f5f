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

// Word2vec-style text vector files:
//
//   <count> <dim>            (optional header line)
//   <token> <v1> ... <vdim>  (one row per token, file order = frequency rank)

#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wikivec/error.hpp"
#include "wikivec/vectors/vector_set.hpp"

namespace wikivec {

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Writes `set` with "%.6g" values. The header line is optional.
inline void save_text(const VectorSet& set, std::ostream& out, bool header = true) {
  if (header) out << set.size() << ' ' << set.dim() << '\n';
  char buf[32];
  std::string line;
  for (std::size_t i = 0; i < set.size(); ++i) {
    line = set.token(i);
    for (const float x : set.row(i)) {
      const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
      line += ' ';
      line.append(buf, res.ptr);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("write failed on vector output");
}

inline void save_text(const VectorSet& set, const std::filesystem::path& path, bool header = true) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write vectors: " + path.string());
  save_text(set, out, header);
  out.close();
  if (!out) throw IoError("cannot write vectors: " + path.string());
}

/// Reads either layout. A first line made of exactly two integers is a
/// header; anything else is the first row of a headerless file and fixes
/// the dimensionality. Rows keep file order as frequency rank.
inline VectorSet load_text(std::istream& in, const std::string& name = "<stream>") {
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  bool have_count = false;
  VectorSet set;
  std::vector<float> values;

  const auto add_row = [&](const std::vector<std::string_view>& fields) {
    if (fields.size() < 2) throw FormatError(name, line_no, "row has no values");
    if (set.dim() == 0) set = VectorSet(fields.size() - 1);
    if (fields.size() - 1 != set.dim()) {
      throw FormatError(name, line_no,
                        "row has " + std::to_string(fields.size() - 1) + " values, expected " +
                            std::to_string(set.dim()));
    }
    values.resize(set.dim());
    for (std::size_t k = 0; k < set.dim(); ++k) {
      if (!detail::parse_number(fields[k + 1], values[k])) {
        throw FormatError(name, line_no, "bad number '" + std::string(fields[k + 1]) + "'");
      }
    }
    try {
      set.add(std::string(fields[0]), values);
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(name, line_no, e.what());
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2) {
      std::size_t count = 0;
      std::size_t dim = 0;
      if (detail::parse_number(fields[0], count) && detail::parse_number(fields[1], dim)) {
        if (dim == 0) throw FormatError(name, line_no, "header declares dimensionality 0");
        set = VectorSet(dim);
        set.reserve(count);
        expected = count;
        have_count = true;
        continue;
      }
    }
    add_row(fields);
  }
  if (in.bad()) throw IoError("read failed: " + name);
  if (have_count && set.size() != expected) {
    throw FormatError(name, line_no,
                      "header declares " + std::to_string(expected) + " rows, found " + std::to_string(set.size()));
  }
  return set;
}

inline VectorSet load_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vectors: " + path.string());
  return load_text(in, path.string());
}

}  // namespace wikivec
