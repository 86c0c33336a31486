// Copyright 2026 The complyscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTML body text extraction for archived policy pages. This is a tolerant
// scanner, not a conforming HTML5 parser: archived pages are frequently
// malformed and only the visible text and block structure matter here.

#include <algorithm>
#include <array>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "complyscope/error.h"
#include "complyscope/policy_ingest.h"
#include "complyscope/text.h"

namespace complyscope::policy {
namespace {

constexpr std::array<std::string_view, 4> kSkippedContainers = {
    "script", "style", "noscript", "template"};

constexpr std::array<std::string_view, 33> kBlockElements = {
    "address", "article", "aside",   "blockquote", "dd",     "details",
    "div",     "dl",      "dt",      "fieldset",   "figcaption", "figure",
    "footer",  "form",    "h1",      "h2",         "h3",     "h4",
    "h5",      "h6",      "header",  "hr",         "li",     "main",
    "nav",     "ol",      "p",       "pre",        "section", "table",
    "td",      "tr",      "ul"};

bool IEquals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

// Case-insensitive find of an ASCII needle.
std::size_t IFind(std::string_view hay, std::string_view needle,
                  std::size_t from = 0) {
  if (needle.empty()) return from;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    if (IEquals(hay.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

std::size_t IRFind(std::string_view hay, std::string_view needle) {
  if (needle.size() > hay.size()) return std::string_view::npos;
  for (std::size_t i = hay.size() - needle.size() + 1; i-- > 0;) {
    if (IEquals(hay.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

bool IsNameChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '-' || c == ':';
}

// Index one past the '>' closing the tag starting at `lt`, honoring quoted
// attribute values.
std::size_t TagEnd(std::string_view s, std::size_t lt) {
  char quote = 0;
  for (std::size_t i = lt + 1; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i + 1;
    }
  }
  return s.size();
}

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<NamedEntity, 22> kEntities = {{
    {"amp", '&'},      {"lt", '<'},       {"gt", '>'},
    {"quot", '"'},     {"apos", '\''},    {"nbsp", ' '},
    {"rsquo", 0x2019}, {"lsquo", 0x2018}, {"rdquo", 0x201D},
    {"ldquo", 0x201C}, {"ndash", 0x2013}, {"mdash", 0x2014},
    {"hellip", 0x2026}, {"copy", 0x00A9}, {"reg", 0x00AE},
    {"trade", 0x2122}, {"bull", 0x2022},  {"middot", 0x00B7},
    {"laquo", 0x00AB}, {"raquo", 0x00BB}, {"eacute", 0x00E9},
    {"shy", 0x00AD},
}};

std::string DecodeEntities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back('&');
      continue;
    }
    std::string_view body = s.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (!body.empty() && body[0] == '#') {
      char32_t cp = 0;
      bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
      std::string_view digits = body.substr(hex ? 2 : 1);
      bool ok = !digits.empty();
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') {
          v = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          v = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          v = c - 'A' + 10;
        } else {
          ok = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
        if (cp > 0x10FFFF) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (cp == 0xA0) cp = ' ';
        text::AppendUtf8(out, cp);
        decoded = true;
      }
    } else {
      for (const auto& e : kEntities) {
        if (e.name == body) {
          text::AppendUtf8(out, e.cp);
          decoded = true;
          break;
        }
      }
    }
    if (decoded) {
      i = semi;
    } else {
      out.push_back('&');
    }
  }
  return out;
}

// Text nodes follow HTML whitespace rules: any run (newlines included)
// renders as one space. U+00A0 is folded into the same rule.
void AppendTextNode(std::string& out, std::string_view raw) {
  std::string decoded = DecodeEntities(raw);
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    char c = decoded[i];
    if (c == '\xC2' && i + 1 < decoded.size() && decoded[i + 1] == '\xA0') {
      out.push_back(' ');
      ++i;
    } else if (text::IsSpace(c)) {
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
}

std::string AttributeValue(std::string_view tag, std::string_view attr) {
  std::size_t pos = 0;
  while ((pos = IFind(tag, attr, pos)) != std::string_view::npos) {
    std::size_t i = pos + attr.size();
    bool boundary = pos > 0 && (text::IsSpace(tag[pos - 1]));
    while (i < tag.size() && text::IsSpace(tag[i])) ++i;
    if (!boundary || i >= tag.size() || tag[i] != '=') {
      pos += attr.size();
      continue;
    }
    ++i;
    while (i < tag.size() && text::IsSpace(tag[i])) ++i;
    if (i < tag.size() && (tag[i] == '"' || tag[i] == '\'')) {
      char q = tag[i];
      std::size_t end = tag.find(q, i + 1);
      if (end == std::string_view::npos) end = tag.size();
      return std::string(tag.substr(i + 1, end - i - 1));
    }
    std::size_t end = i;
    while (end < tag.size() && !text::IsSpace(tag[end]) && tag[end] != '>') {
      ++end;
    }
    return std::string(tag.substr(i, end - i));
  }
  return {};
}

struct BodyScan {
  std::string text;
  bool links_to_privacy_page = false;
};

BodyScan ScanBody(std::string_view body) {
  BodyScan scan;
  std::string& out = scan.text;
  bool in_anchor = false;
  std::string anchor_text;
  std::string anchor_href;

  auto close_anchor = [&] {
    if (!in_anchor) return;
    std::string probe = text::AsciiLower(anchor_text + " " + anchor_href);
    if (probe.find("privacy") != std::string::npos) {
      scan.links_to_privacy_page = true;
    }
    in_anchor = false;
  };

  std::size_t i = 0;
  while (i < body.size()) {
    std::size_t lt = body.find('<', i);
    std::string_view chunk = body.substr(i, lt == std::string_view::npos
                                                ? std::string_view::npos
                                                : lt - i);
    if (!chunk.empty()) {
      std::size_t before = out.size();
      AppendTextNode(out, chunk);
      if (in_anchor) anchor_text.append(out, before, std::string::npos);
    }
    if (lt == std::string_view::npos) break;

    if (body.compare(lt, 4, "<!--") == 0) {
      std::size_t end = body.find("-->", lt + 4);
      i = end == std::string_view::npos ? body.size() : end + 3;
      continue;
    }
    if (lt + 1 < body.size() && (body[lt + 1] == '!' || body[lt + 1] == '?')) {
      i = TagEnd(body, lt);
      continue;
    }
    bool closing = lt + 1 < body.size() && body[lt + 1] == '/';
    std::size_t name_start = lt + (closing ? 2 : 1);
    std::size_t name_end = name_start;
    while (name_end < body.size() && IsNameChar(body[name_end])) ++name_end;
    if (name_end == name_start) {
      // A bare '<' in text.
      out.push_back('<');
      i = lt + 1;
      continue;
    }
    std::string name =
        text::AsciiLower(body.substr(name_start, name_end - name_start));
    std::size_t tag_end = TagEnd(body, lt);
    std::string_view tag = body.substr(lt, tag_end - lt);
    i = tag_end;

    if (!closing &&
        std::find(kSkippedContainers.begin(), kSkippedContainers.end(),
                  name) != kSkippedContainers.end()) {
      bool self_closing = tag.size() >= 2 && tag[tag.size() - 2] == '/';
      if (!self_closing) {
        std::size_t close = IFind(body, "</" + name, i);
        i = close == std::string_view::npos ? body.size()
                                            : TagEnd(body, close);
      }
      continue;
    }
    if (name == "br") {
      out.push_back('\n');
    } else if (std::find(kBlockElements.begin(), kBlockElements.end(), name) !=
               kBlockElements.end()) {
      out += "\n\n";
    } else if (name == "a") {
      if (closing) {
        close_anchor();
      } else {
        close_anchor();
        in_anchor = true;
        anchor_text.clear();
        anchor_href = AttributeValue(tag, "href");
      }
    }
    // meta and every other inline tag contribute nothing.
  }
  close_anchor();
  return scan;
}

// Trims every line and folds runs of blank lines into a single blank line.
std::string TidyLines(std::string_view raw) {
  std::string out;
  bool pending_blank = false;
  bool pending_newline = false;
  for (std::string_view line : text::Split(raw, '\n')) {
    std::string tidy = text::CollapseWhitespace(line);
    if (tidy.empty()) {
      pending_blank = !out.empty();
      continue;
    }
    if (pending_blank) {
      out += "\n\n";
    } else if (pending_newline) {
      out += '\n';
    }
    pending_blank = false;
    pending_newline = true;
    out += tidy;
  }
  return out;
}

}  // namespace

std::string StripArchivePrefix(std::string_view input) {
  std::string_view t = text::Trim(input);
  if (!text::StartsWith(t, "success")) return std::string(input);
  std::size_t end = t.find("TIMESTAMPS");
  if (end == std::string_view::npos) return std::string(input);
  return std::string(text::Trim(t.substr(end + std::strlen("TIMESTAMPS"))));
}

std::string ExtractPolicyText(std::string_view html,
                              const ExtractOptions& options) {
  std::size_t body_open = std::string_view::npos;
  for (std::size_t pos = IFind(html, "<body"); pos != std::string_view::npos;
       pos = IFind(html, "<body", pos + 5)) {
    char next = pos + 5 < html.size() ? html[pos + 5] : '>';
    if (next == '>' || next == '/' || text::IsSpace(next)) {
      body_open = pos;
      break;
    }
  }
  if (body_open == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedDocument, "no <body> element found");
  }
  std::size_t content_start = TagEnd(html, body_open);
  std::size_t body_close = IRFind(html, "</body");
  if (body_close == std::string_view::npos || body_close < content_start) {
    body_close = html.size();
  }

  BodyScan scan = ScanBody(html.substr(content_start, body_close - content_start));
  std::string result = StripArchivePrefix(TidyLines(scan.text));
  if (text::Trim(result).empty()) {
    throw Error(ErrorCode::kEmptyPolicy, "policy body contains no text");
  }
  if (scan.links_to_privacy_page &&
      text::Utf8Length(result) < options.unresolvable_max_chars) {
    throw Error(ErrorCode::kUnresolvable,
                "page only links onward to the policy text");
  }
  return result;
}

std::string ExtractPolicyText(const PolicySnapshot& snapshot,
                              const ExtractOptions& options) {
  if (snapshot.raw_html.empty()) {
    throw Error(ErrorCode::kMalformedDocument,
                "snapshot " + snapshot.id() + " has no content");
  }
  return ExtractPolicyText(snapshot.raw_html, options);
}

}  // namespace complyscope::policy
