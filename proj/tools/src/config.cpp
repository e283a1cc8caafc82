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

#include "cpqt_tools/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cpqt/errors.hpp"

namespace cpqt::tools {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double plain_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + s + "' is not a number");
  }
  if (used != s.size()) throw InvalidArgument("config: '" + s + "' is not a number");
  return v;
}

}  // namespace

double parse_number(const std::string& raw) {
  std::string s = trim(strip_quotes(trim(raw)));
  if (s.empty()) throw InvalidArgument("config: empty number");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    return parse_number(s.substr(0, slash)) / parse_number(s.substr(slash + 1));
  }
  if (const auto star = s.find('*'); star != std::string::npos) {
    return parse_number(s.substr(0, star)) * parse_number(s.substr(star + 1));
  }
  if (s == "pi") return std::numbers::pi;
  if (s == "-pi") return -std::numbers::pi;
  return plain_number(s);
}

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(lineno) + ": empty key");
    cfg.set(key, trim(line.substr(eq + 1)));
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("config: cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

void Config::set_default(const std::string& key, const std::string& value) {
  values_.emplace(key, value);
}

void Config::set(const std::string& key, const std::string& value) {
  std::string v = trim(value);
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') v = trim(v.substr(1, v.size() - 2));
  values_[key] = strip_quotes(v);
}

std::string Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvalidArgument("config: missing key '" + key + "'");
  return it->second;
}

double Config::num(const std::string& key) const { return parse_number(str(key)); }

std::int64_t Config::integer(const std::string& key) const {
  const double v = num(key);
  if (v != std::floor(v)) throw InvalidArgument("config: '" + key + "' must be an integer");
  return static_cast<std::int64_t>(v);
}

std::uint64_t Config::uinteger(const std::string& key) const {
  const std::string s = trim(str(key));
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s.front() == '-') {
    throw InvalidArgument("config: '" + key + "' must be a non-negative integer");
  }
  return v;
}

std::vector<double> Config::nums(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(parse_number(item));
  }
  return out;
}

std::string Config::echo() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace cpqt::tools
