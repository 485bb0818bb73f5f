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

// Wikitext layout scanner.
//
// Splits a page body into the pieces that survive as visible prose: plain
// text runs (each an exact byte slice of the source) and internal links.
// Everything else is dropped: comments, templates, tables, <ref> and similar
// extension tags, HTML tags, entities, bold/italic quote runs, magic words,
// file/image/category links and interlanguage links. Templates are removed,
// never expanded.
//
// Offsets are byte offsets into the UTF-8 source.

#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wikivec {

struct TextRun {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct LinkRun {
  std::size_t begin = 0;  // at the opening "[["
  std::size_t end = 0;    // past the closing "]]" and any link trail
  std::string target;     // trimmed, section fragment removed
  std::string surface;    // visible text, never empty
};

struct MarkupLayout {
  std::vector<TextRun> text;
  std::vector<LinkRun> links;
  std::size_t warnings = 0;  // unbalanced constructs skipped
};

namespace detail {

inline bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

inline bool istarts_with(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

inline std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

// Links that are not anchors and whose whole construct is invisible.
inline bool is_hidden_link_target(std::string_view target) {
  static constexpr std::array<std::string_view, 4> kHidden = {"file:", "image:", "media:", "category:"};
  for (const auto p : kHidden) {
    if (istarts_with(target, p)) return true;
  }
  // Interlanguage links: [[fr:Paris]], [[zh-min-nan:...]].
  const auto colon = target.find(':');
  if (colon < 2 || colon == std::string_view::npos || colon > 12) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    const char c = target[i];
    if (!((c >= 'a' && c <= 'z') || (c == '-' && i > 0))) return false;
  }
  return true;
}

// Tags whose content is not prose.
inline bool drops_content(std::string_view lowered_name) {
  static constexpr std::array<std::string_view, 14> kTags = {
      "ref",   "math",  "gallery", "timeline", "score",      "syntaxhighlight", "source",
      "chem",  "ce",    "hiero",   "imagemap", "templatedata", "graph",         "mapframe"};
  for (const auto t : kTags) {
    if (t == lowered_name) return true;
  }
  return false;
}

class MarkupScanner {
 public:
  explicit MarkupScanner(std::string_view s) : s_(s) {}

  MarkupLayout run() {
    while (i_ < s_.size()) {
      if (!step()) ++i_;
    }
    flush(s_.size());
    return std::move(out_);
  }

 private:
  bool at(std::size_t p, std::string_view lit) const { return s_.substr(p, lit.size()) == lit; }

  void flush(std::size_t end) {
    if (end > text_start_) out_.text.push_back({text_start_, end});
  }

  // Drops [i_, to) and resumes text after it.
  void drop_until(std::size_t to) {
    flush(i_);
    i_ = to;
    text_start_ = to;
  }

  void warn_and_skip(std::size_t n) {
    ++out_.warnings;
    drop_until(i_ + n);
  }

  // Returns true when a construct starting at i_ was consumed.
  bool step() {
    const char c = s_[i_];
    switch (c) {
      case '<':
        return comment() || tag();
      case '{':
        if (at(i_, "{{")) return braces();
        if (at(i_, "{|") && at_line_start(i_)) return table();
        return false;
      case '[':
        if (at(i_, "[[")) return link();
        return external_link();
      case '\'':
        if (at(i_, "''")) {
          std::size_t j = i_;
          while (j < s_.size() && s_[j] == '\'') ++j;
          drop_until(j);
          return true;
        }
        return false;
      case '&':
        return entity();
      case '_':
        return magic_word();
      default:
        return false;
    }
  }

  bool at_line_start(std::size_t p) const {
    while (p > 0 && (s_[p - 1] == ' ' || s_[p - 1] == '\t')) --p;
    return p == 0 || s_[p - 1] == '\n';
  }

  bool comment() {
    if (!at(i_, "<!--")) return false;
    const auto close = s_.find("-->", i_ + 4);
    drop_until(close == std::string_view::npos ? s_.size() : close + 3);
    return true;
  }

  bool tag() {
    std::size_t p = i_ + 1;
    const bool closing = p < s_.size() && s_[p] == '/';
    if (closing) ++p;
    if (p >= s_.size() || !is_ascii_alpha(s_[p])) return false;
    std::string name;
    while (p < s_.size() && (is_ascii_alpha(s_[p]) || (s_[p] >= '0' && s_[p] <= '9'))) {
      name += ascii_lower(s_[p++]);
    }
    if (p < s_.size() && !(s_[p] == '>' || s_[p] == '/' || s_[p] == ' ' || s_[p] == '\t' || s_[p] == '\n')) {
      return false;
    }
    const auto gt = s_.find('>', p);
    if (gt == std::string_view::npos) return false;
    const bool self_closing = s_[gt - 1] == '/';
    if (!closing && !self_closing && drops_content(name)) {
      // Find the matching close tag, case-insensitively.
      const std::string close_tag = "</" + name;
      for (std::size_t q = gt + 1; q + close_tag.size() <= s_.size(); ++q) {
        if (s_[q] == '<' && istarts_with(s_.substr(q), close_tag)) {
          const auto end = s_.find('>', q);
          drop_until(end == std::string_view::npos ? s_.size() : end + 1);
          return true;
        }
      }
      ++out_.warnings;
    }
    drop_until(gt + 1);
    return true;
  }

  bool braces() {
    int depth = 0;
    std::size_t k = i_;
    while (k + 1 < s_.size()) {
      if (s_[k] == '{' && s_[k + 1] == '{') {
        ++depth;
        k += 2;
      } else if (s_[k] == '}' && s_[k + 1] == '}') {
        --depth;
        k += 2;
        if (depth == 0) {
          drop_until(k);
          return true;
        }
      } else {
        ++k;
      }
    }
    warn_and_skip(2);
    return true;
  }

  bool table() {
    int depth = 0;
    std::size_t line = i_;
    while (line < s_.size()) {
      std::size_t p = line;
      while (p < s_.size() && (s_[p] == ' ' || s_[p] == '\t')) ++p;
      if (at(p, "{|")) {
        ++depth;
      } else if (at(p, "|}")) {
        if (--depth == 0) {
          drop_until(p + 2);
          return true;
        }
      }
      const auto nl = s_.find('\n', p);
      if (nl == std::string_view::npos) break;
      line = nl + 1;
    }
    warn_and_skip(2);
    return true;
  }

  // Position past the "]]" matching the "[[" at `open`, or npos.
  std::size_t match_link(std::size_t open) const {
    int depth = 0;
    std::size_t k = open;
    while (k + 1 < s_.size()) {
      if (s_[k] == '[' && s_[k + 1] == '[') {
        ++depth;
        k += 2;
      } else if (s_[k] == ']' && s_[k + 1] == ']') {
        k += 2;
        if (--depth == 0) return k;
      } else if (s_[k] == '\n' && k + 1 < s_.size() && s_[k + 1] == '\n' && depth == 1) {
        return std::string_view::npos;  // links never span paragraphs
      } else {
        ++k;
      }
    }
    return std::string_view::npos;
  }

  bool link() {
    const auto close = match_link(i_);
    if (close == std::string_view::npos) {
      warn_and_skip(2);
      return true;
    }
    const std::size_t inner_begin = i_ + 2;
    const std::size_t inner_end = close - 2;
    const std::string_view inner = s_.substr(inner_begin, inner_end - inner_begin);
    const auto pipe = inner.find('|');
    std::string_view target = trim(inner.substr(0, pipe));
    const bool leading_colon = !target.empty() && target.front() == ':';
    if (!leading_colon && is_hidden_link_target(target)) {
      drop_until(close);
      return true;
    }
    if (leading_colon) target = trim(target.substr(1));
    target = trim(target.substr(0, target.find('#')));

    std::size_t trail = close;
    while (trail < s_.size() && s_[trail] >= 'a' && s_[trail] <= 'z') ++trail;

    const std::size_t surface_begin = pipe == std::string_view::npos ? inner_begin : inner_begin + pipe + 1;
    if (target.empty()) {
      // Same-page section link: its label is ordinary text.
      flush(i_);
      out_.text.push_back({surface_begin, inner_end});
      if (trail > close) out_.text.push_back({close, trail});
      i_ = trail;
      text_start_ = trail;
      return true;
    }

    std::string surface = visible_text(s_.substr(surface_begin, inner_end - surface_begin));
    surface += s_.substr(close, trail - close);
    if (trim(surface).empty()) surface = std::string(target);
    flush(i_);
    out_.links.push_back({i_, trail, std::string(target), std::string(trim(surface))});
    i_ = trail;
    text_start_ = trail;
    return true;
  }

  bool external_link() {
    static constexpr std::array<std::string_view, 5> kSchemes = {"http://", "https://", "ftp://", "//", "mailto:"};
    bool url = false;
    for (const auto scheme : kSchemes) url = url || istarts_with(s_.substr(i_ + 1), scheme);
    if (!url) return false;
    const auto close = s_.find_first_of("]\n", i_ + 1);
    if (close == std::string_view::npos || s_[close] != ']') return false;
    const auto space = s_.find(' ', i_ + 1);
    flush(i_);
    if (space != std::string_view::npos && space < close) out_.text.push_back({space + 1, close});
    i_ = close + 1;
    text_start_ = i_;
    return true;
  }

  bool entity() {
    std::size_t p = i_ + 1;
    if (p < s_.size() && s_[p] == '#') {
      ++p;
      const bool hex = p < s_.size() && (s_[p] == 'x' || s_[p] == 'X');
      if (hex) ++p;
      const std::size_t digits = p;
      while (p < s_.size() && (std::isxdigit(static_cast<unsigned char>(s_[p])) != 0) && (hex || std::isdigit(static_cast<unsigned char>(s_[p])) != 0)) ++p;
      if (p == digits) return false;
    } else {
      const std::size_t letters = p;
      while (p < s_.size() && is_ascii_alpha(s_[p])) ++p;
      if (p == letters || p - letters > 10) return false;
    }
    if (p >= s_.size() || s_[p] != ';') return false;
    drop_until(p + 1);
    return true;
  }

  bool magic_word() {
    if (!at(i_, "__")) return false;
    std::size_t p = i_ + 2;
    while (p < s_.size() && s_[p] >= 'A' && s_[p] <= 'Z') ++p;
    if (p == i_ + 2 || !at(p, "__")) return false;
    drop_until(p + 2);
    return true;
  }

  static std::string visible_text(std::string_view fragment);

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t text_start_ = 0;
  MarkupLayout out_;
};

}  // namespace detail

/// Scans one page body.
inline MarkupLayout scan_markup(std::string_view wikitext) { return detail::MarkupScanner(wikitext).run(); }

namespace detail {

// Visible text of a link label: text runs and nested link surfaces, in order.
inline std::string MarkupScanner::visible_text(std::string_view fragment) {
  const MarkupLayout layout = scan_markup(fragment);
  std::string out;
  std::size_t t = 0;
  std::size_t l = 0;
  while (t < layout.text.size() || l < layout.links.size()) {
    const bool take_text =
        l == layout.links.size() || (t < layout.text.size() && layout.text[t].begin < layout.links[l].begin);
    if (take_text) {
      out += fragment.substr(layout.text[t].begin, layout.text[t].end - layout.text[t].begin);
      ++t;
    } else {
      out += layout.links[l].surface;
      ++l;
    }
  }
  return out;
}

}  // namespace detail

}  // namespace wikivec
