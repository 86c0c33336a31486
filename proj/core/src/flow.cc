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

#include <algorithm>
#include <regex>

#include "complyscope/dynamic_analyzer.h"
#include "complyscope/error.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::dynamic {

using ojson = nlohmann::ordered_json;

namespace {

bool IsAlnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string ScalarText(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void Flatten(const ojson& v, const std::string& path, std::vector<KeyValue>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      Flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      Flatten(v[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i),
              out);
    }
  } else if (!path.empty()) {
    out.push_back({path, ScalarText(v)});
  }
}

void ParseUrlEncoded(std::string_view s, std::vector<KeyValue>& out) {
  for (std::string_view part : text::Split(s, '&')) {
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0) continue;
    out.push_back({text::PercentDecode(part.substr(0, eq)),
                   text::PercentDecode(part.substr(eq + 1))});
  }
}

void ParseLoosePairs(std::string_view s, std::vector<KeyValue>& out) {
  static const std::regex kPair(
      R"re("?([A-Za-z_][A-Za-z0-9_.\-]*)"?\s*[:=]\s*"?([^"&,;}\s]*))re");
  std::string str(s);
  for (auto it = std::sregex_iterator(str.begin(), str.end(), kPair);
       it != std::sregex_iterator(); ++it) {
    out.push_back({(*it)[1].str(), (*it)[2].str()});
  }
}

}  // namespace

FlowRecord ParseFlowJson(std::string_view line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::kParse, std::string("flow: ") + e.what());
  }
  FlowRecord f;
  try {
    f.app_id = j.value("app_id", "");
    f.version_code = j.value("version_code", std::int64_t{0});
    if (j.contains("ts")) f.timestamp = ScalarText(j["ts"]);
    f.dst_host = j.value("dst_host", "");
    f.method = j.value("method", "GET");
    f.uri = j.value("uri", "");
    if (j.contains("headers")) {
      std::set<std::string> seen;
      for (auto it = j["headers"].begin(); it != j["headers"].end(); ++it) {
        if (!seen.insert(text::AsciiLower(it.key())).second) {
          throw Error(ErrorCode::kParse, "flow: duplicate header " + it.key());
        }
        f.headers.emplace_back(it.key(), ScalarText(it.value()));
      }
    }
    std::string b64 = j.value("post_body_b64", "");
    if (!b64.empty()) f.post_body = Base64Decode(b64);
    if (j.contains("leak")) f.leak = j["leak"].get<bool>();
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::kParse, std::string("flow: ") + e.what());
  }
  if (f.dst_host.empty()) throw Error(ErrorCode::kParse, "flow: dst_host is empty");
  return f;
}

std::vector<FlowRecord> ParseFlowJsonl(std::string_view jsonl) {
  std::vector<FlowRecord> out;
  std::size_t line_no = 0;
  for (std::string_view line : text::Split(jsonl, '\n')) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    try {
      out.push_back(ParseFlowJson(line));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<FlowRecord> LoadFlows(const std::filesystem::path& path) {
  return ParseFlowJsonl(text::ReadFile(path.string()));
}

std::string FlowToJson(const FlowRecord& f) {
  ojson j;
  j["app_id"] = f.app_id;
  j["version_code"] = f.version_code;
  j["ts"] = f.timestamp;
  j["dst_host"] = f.dst_host;
  j["method"] = f.method;
  j["uri"] = f.uri;
  j["headers"] = ojson::object();
  for (const auto& [k, v] : f.headers) j["headers"][k] = v;
  j["post_body_b64"] = Base64Encode(f.post_body);
  if (f.leak) j["leak"] = *f.leak;
  return j.dump();
}

std::optional<std::string> HeaderValue(const FlowRecord& flow,
                                       std::string_view name) {
  std::string want = text::AsciiLower(name);
  for (const auto& [k, v] : flow.headers) {
    if (text::AsciiLower(k) == want) return v;
  }
  return std::nullopt;
}

std::string FlowFeatureText(const FlowRecord& flow) {
  std::string out = flow.uri;
  out += ' ';
  out += HeaderValue(flow, "referer").value_or("");
  if (!flow.post_body.empty()) {
    out += ' ';
    out += text::SanitizeUtf8(flow.post_body);
  }
  for (const auto& [k, v] : flow.headers) {
    if (text::AsciiLower(k) == "referer") continue;
    out += ' ';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

std::vector<std::string> FlowTokens(std::string_view feature_text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2) out.push_back(cur);
    cur.clear();
  };
  for (char c : feature_text) {
    if (IsAlnum(c)) {
      cur += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    } else {
      flush();
    }
  }
  flush();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<KeyValue> ParseKeyValues(const FlowRecord& flow) {
  std::vector<KeyValue> out;
  if (std::size_t q = flow.uri.find('?'); q != std::string::npos) {
    std::string_view query = std::string_view(flow.uri).substr(q + 1);
    query = query.substr(0, query.find('#'));
    ParseUrlEncoded(query, out);
  }
  std::string body = text::SanitizeUtf8(flow.post_body);
  std::string_view trimmed = text::Trim(body);
  bool parsed_json = false;
  if (!trimmed.empty() && (trimmed[0] == '{' || trimmed[0] == '[')) {
    ojson j = ojson::parse(trimmed, nullptr, /*allow_exceptions=*/false);
    if (!j.is_discarded()) {
      Flatten(j, "", out);
      parsed_json = true;
    }
  }
  if (!parsed_json && !trimmed.empty()) {
    ParseUrlEncoded(trimmed, out);
    ParseLoosePairs(trimmed, out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace complyscope::dynamic
