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

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpqt_tools/config.hpp"

namespace cpqt::tools {

/// SHA-1 of "blob <size>\0<content>", the id git gives the same bytes.
std::string git_blob_sha1(const std::string& content);

/// %.17g
std::string format_double(double v);

/// CSV with a header row and 17-significant-digit numbers. Closing also
/// writes `<path>.meta`: the command, the config hash and the config echo.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns,
            const std::string& command, const Config& config);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void close();

 private:
  std::filesystem::path path_;
  std::size_t columns_;
  std::FILE* file_ = nullptr;
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// "<=", ">=", "<", ">" or "==", read as `value <op> threshold`.
  std::string comparison;
  bool pass = false;
  std::string note;
};

Check make_check(const std::string& name, double value, const std::string& comparison,
                 double threshold, const std::string& note = {});

struct RunSummary {
  std::string experiment;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<Check> checks;
  nlohmann::json info = nlohmann::json::object();

  bool pass() const;
  nlohmann::json to_json() const;
};

void write_summary(const std::filesystem::path& path, const RunSummary& summary);

}  // namespace cpqt::tools
