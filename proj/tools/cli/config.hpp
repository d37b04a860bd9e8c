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

#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace obds::cli {

/// Flat `key = value` settings read from a --config file.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& origin = "config");
  static Config load(const std::filesystem::path& path);

  /// Throws InvalidInput naming the first key not in `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  std::optional<std::string> get(const std::string& key) const;
  bool empty() const { return entries_.empty(); }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
};

double parse_double(const std::string& text, const std::string& what);
long parse_long(const std::string& text, const std::string& what);

/// Command-line flag if given, else the config value, else the fallback.
double resolve(const std::optional<double>& flag, const Config& cfg, const std::string& key,
               double fallback);
long resolve(const std::optional<long>& flag, const Config& cfg, const std::string& key,
             long fallback);
std::string resolve(const std::optional<std::string>& flag, const Config& cfg,
                    const std::string& key, const std::string& fallback);
std::optional<double> resolve_optional(const std::optional<double>& flag, const Config& cfg,
                                       const std::string& key);

}  // namespace obds::cli
