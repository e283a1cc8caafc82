// Copyright 2026 The cpqt Authors
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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cpqt::tools {

/// Flat `key = value` experiment configuration (a TOML subset: comments with
/// '#', quoted strings, one-level arrays). Numbers may also be written as
/// fractions ("10/11") or multiples of pi ("pi/2", "0.5*pi").
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  /// Sets a value unless the key already exists.
  void set_default(const std::string& key, const std::string& value);
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string str(const std::string& key) const;
  double num(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t uinteger(const std::string& key) const;
  std::vector<double> nums(const std::string& key) const;

  /// Canonical text: sorted `key = value` lines.
  std::string echo() const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Parses "3", "1e-3", "10/11", "pi/2", "0.5*pi".
double parse_number(const std::string& text);

}  // namespace cpqt::tools
