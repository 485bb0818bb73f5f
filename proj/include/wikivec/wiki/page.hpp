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

// Streaming reader for MediaWiki XML export dumps.
//
// PageStream pulls fixed-size chunks from an istream and feeds them to expat;
// completed <page> elements are queued and handed out one at a time, so
// memory stays bounded by the chunk size plus the largest single page.

#pragma once

#include <expat.h>

#include <charconv>
#include <cstdint>
#include <deque>
#include <istream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikivec/error.hpp"

namespace wikivec {

using PageId = std::uint64_t;

struct PageRecord {
  PageId page_id = 0;
  std::string title;
  std::int64_t ns = 0;
  std::optional<std::string> redirect_target;
  std::string wikitext;

  bool is_redirect() const { return redirect_target.has_value(); }
};

namespace detail {

// "#REDIRECT [[Target]]" at the start of the text; used when the <redirect>
// element carries no title attribute (very old dumps).
inline std::optional<std::string> redirect_from_text(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t')) ++i;
  constexpr std::string_view kMagic = "#redirect";
  if (text.size() - i < kMagic.size()) return std::nullopt;
  for (std::size_t k = 0; k < kMagic.size(); ++k) {
    char c = text[i + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != kMagic[k]) return std::nullopt;
  }
  const auto open = text.find("[[", i + kMagic.size());
  if (open == std::string_view::npos) return std::nullopt;
  const auto close = text.find("]]", open + 2);
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view target = text.substr(open + 2, close - open - 2);
  target = target.substr(0, target.find('|'));
  if (target.empty()) return std::nullopt;
  return std::string(target);
}

inline std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  const auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

}  // namespace detail

/// Pull-style iterator over the <page> elements of a dump, in document order.
///
/// Malformed XML raises XmlError with the byte offset reported by expat. A
/// truncated stream first yields every complete page and then raises.
class PageStream {
 public:
  explicit PageStream(std::istream& in, std::size_t chunk_size = 1 << 16)
      : in_(in), buffer_(chunk_size), parser_(XML_ParserCreate(nullptr)) {
    if (!parser_) throw Error("failed to create XML parser");
    XML_SetUserData(parser_.get(), this);
    XML_SetElementHandler(parser_.get(), &PageStream::on_start, &PageStream::on_end);
    XML_SetCharacterDataHandler(parser_.get(), &PageStream::on_text);
  }

  PageStream(const PageStream&) = delete;
  PageStream& operator=(const PageStream&) = delete;

  /// Next page, or nullopt once the dump is exhausted.
  std::optional<PageRecord> next() {
    while (ready_.empty() && !finished_) feed();
    if (!ready_.empty()) {
      PageRecord page = std::move(ready_.front());
      ready_.pop_front();
      return page;
    }
    if (error_) {
      auto err = std::move(*error_);
      error_.reset();
      throw err;
    }
    return std::nullopt;
  }

  std::uint64_t bytes_consumed() const { return consumed_; }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = PageRecord;
    using difference_type = std::ptrdiff_t;
    using pointer = PageRecord*;
    using reference = PageRecord&;

    iterator() = default;
    explicit iterator(PageStream* s) : stream_(s) { ++*this; }
    reference operator*() { return *current_; }
    pointer operator->() { return &*current_; }
    iterator& operator++() {
      current_ = stream_->next();
      if (!current_) stream_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return stream_ == o.stream_; }

   private:
    PageStream* stream_ = nullptr;
    std::optional<PageRecord> current_;
  };

  iterator begin() { return iterator(this); }
  iterator end() { return iterator(); }

 private:
  enum class Field { kNone, kTitle, kNs, kId, kText };

  struct ParserDeleter {
    void operator()(XML_Parser p) const { XML_ParserFree(p); }
  };

  void feed() {
    in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    const auto got = static_cast<int>(in_.gcount());
    const bool last = got == 0 || in_.eof();
    if (in_.bad()) {
      finished_ = true;
      error_.emplace("read error", consumed_);
      return;
    }
    const auto status = XML_Parse(parser_.get(), buffer_.data(), got, last ? XML_TRUE : XML_FALSE);
    consumed_ += static_cast<std::uint64_t>(got);
    if (status == XML_STATUS_ERROR) {
      finished_ = true;
      if (!error_) {
        const auto offset = static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser_.get()));
        error_.emplace(XML_ErrorString(XML_GetErrorCode(parser_.get())), offset);
      }
      return;
    }
    if (last) finished_ = true;
  }

  void fail(const std::string& what) {
    if (!error_) {
      error_.emplace(what, static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser_.get())));
    }
    XML_StopParser(parser_.get(), XML_FALSE);
  }

  static void XMLCALL on_start(void* self_ptr, const XML_Char* name, const XML_Char** attrs) {
    auto& self = *static_cast<PageStream*>(self_ptr);
    const auto local = detail::local_name(name);
    ++self.depth_;
    if (local == "page" && self.page_depth_ == 0) {
      self.page_depth_ = self.depth_;
      self.current_ = PageRecord{};
      self.saw_id_ = false;
      self.saw_redirect_tag_ = false;
      return;
    }
    if (self.page_depth_ == 0) return;
    const int rel = self.depth_ - self.page_depth_;
    self.field_ = Field::kNone;
    if (rel == 1 && local == "title") {
      self.field_ = Field::kTitle;
    } else if (rel == 1 && local == "ns") {
      self.field_ = Field::kNs;
    } else if (rel == 1 && local == "id") {
      self.field_ = Field::kId;
    } else if (rel == 1 && local == "redirect") {
      self.saw_redirect_tag_ = true;
      for (int i = 0; attrs[i] != nullptr; i += 2) {
        if (detail::local_name(attrs[i]) == "title" && attrs[i + 1][0] != '\0') {
          self.current_.redirect_target = attrs[i + 1];
        }
      }
    } else if (rel == 2 && local == "text") {
      self.field_ = Field::kText;
      self.current_.wikitext.clear();  // last revision wins
    }
    self.scratch_.clear();
  }

  static void XMLCALL on_text(void* self_ptr, const XML_Char* s, int len) {
    auto& self = *static_cast<PageStream*>(self_ptr);
    if (self.field_ == Field::kNone) return;
    if (self.field_ == Field::kText) {
      self.current_.wikitext.append(s, static_cast<std::size_t>(len));
    } else {
      self.scratch_.append(s, static_cast<std::size_t>(len));
    }
  }

  static void XMLCALL on_end(void* self_ptr, const XML_Char* name) {
    auto& self = *static_cast<PageStream*>(self_ptr);
    const int rel = self.depth_ - self.page_depth_;
    --self.depth_;
    if (self.page_depth_ == 0) return;
    switch (self.field_) {
      case Field::kTitle:
        self.current_.title = self.scratch_;
        break;
      case Field::kNs:
        if (!parse_int(self.scratch_, self.current_.ns)) return self.fail("invalid <ns> value");
        break;
      case Field::kId:
        if (!parse_int(self.scratch_, self.current_.page_id) || self.current_.page_id == 0) {
          return self.fail("invalid page <id> value");
        }
        self.saw_id_ = true;
        break;
      default:
        break;
    }
    self.field_ = Field::kNone;
    if (rel == 0 && detail::local_name(name) == "page") {
      self.page_depth_ = 0;
      if (!self.saw_id_) return self.fail("page without <id>");
      auto& page = self.current_;
      if (!page.redirect_target && (self.saw_redirect_tag_ || page.wikitext.starts_with("#"))) {
        page.redirect_target = detail::redirect_from_text(page.wikitext);
      }
      self.ready_.push_back(std::move(page));
    }
  }

  template <typename T>
  static bool parse_int(const std::string& s, T& out) {
    std::string_view v(s);
    while (!v.empty() && (v.front() == ' ' || v.front() == '\n' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\n' || v.back() == '\t')) v.remove_suffix(1);
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    return ec == std::errc() && ptr == v.data() + v.size() && !v.empty();
  }

  std::istream& in_;
  std::vector<char> buffer_;
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser_;
  std::deque<PageRecord> ready_;
  std::optional<XmlError> error_;
  bool finished_ = false;
  std::uint64_t consumed_ = 0;

  int depth_ = 0;
  int page_depth_ = 0;
  Field field_ = Field::kNone;
  PageRecord current_;
  std::string scratch_;
  bool saw_id_ = false;
  bool saw_redirect_tag_ = false;
};

}  // namespace wikivec
