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

#ifndef COMPLYSCOPE_TEXT_H_
#define COMPLYSCOPE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace complyscope::text {

std::string AsciiLower(std::string_view s);
std::string_view Trim(std::string_view s);
bool IsSpace(char c);

// Replaces every whitespace run with a single space and trims the ends.
std::string CollapseWhitespace(std::string_view s);

std::vector<std::string> SplitWhitespace(std::string_view s);
std::vector<std::string_view> Split(std::string_view s, char sep);

// Number of code points; malformed bytes count as one each.
std::size_t Utf8Length(std::string_view s);

// Replaces every malformed UTF-8 sequence with U+FFFD.
std::string SanitizeUtf8(std::string_view bytes);

// Appends the UTF-8 encoding of `cp` to `out`.
void AppendUtf8(std::string& out, char32_t cp);

// Decodes %XX escapes; `plus_as_space` applies form-encoding rules.
std::string PercentDecode(std::string_view s, bool plus_as_space = true);

bool StartsWith(std::string_view s, std::string_view prefix);
bool EndsWith(std::string_view s, std::string_view suffix);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Reads a whole file; throws Error(kIo).
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace complyscope::text

#endif  // COMPLYSCOPE_TEXT_H_
