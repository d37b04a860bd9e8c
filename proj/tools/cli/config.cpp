// Copyright 2026 The obdestripe Authors
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

#include "config.hpp"

#include <charconv>
#include <fstream>

#include "obds/error.hpp"

namespace obds::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw InvalidInput(where + ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw InvalidInput(where + ": expected `key = value`");
    if (!cfg.entries_.emplace(key, value).second)
      throw InvalidInput(where + ": duplicate key '" + key + "'");
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse(in, path.string());
}

void Config::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : entries_)
    if (!allowed.contains(key)) throw InvalidInput(origin_ + ": unknown key '" + key + "'");
}

std::optional<std::string> Config::get(const std::string& key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidInput(what + ": not a number '" + text + "'");
  return v;
}

long parse_long(const std::string& text, const std::string& what) {
  long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidInput(what + ": not an integer '" + text + "'");
  return v;
}

double resolve(const std::optional<double>& flag, const Config& cfg, const std::string& key,
               double fallback) {
  if (flag) return *flag;
  if (auto v = cfg.get(key)) return parse_double(*v, "config key '" + key + "'");
  return fallback;
}

long resolve(const std::optional<long>& flag, const Config& cfg, const std::string& key,
             long fallback) {
  if (flag) return *flag;
  if (auto v = cfg.get(key)) return parse_long(*v, "config key '" + key + "'");
  return fallback;
}

std::string resolve(const std::optional<std::string>& flag, const Config& cfg,
                    const std::string& key, const std::string& fallback) {
  if (flag) return *flag;
  if (auto v = cfg.get(key)) return *v;
  return fallback;
}

std::optional<double> resolve_optional(const std::optional<double>& flag, const Config& cfg,
                                       const std::string& key) {
  if (flag) return flag;
  if (auto v = cfg.get(key)) return parse_double(*v, "config key '" + key + "'");
  return std::nullopt;
}

}  // namespace obds::cli
