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

#include "cpqt_tools/output.hpp"

#include <cmath>
#include <fstream>

#include <openssl/sha.h>

#include "cpqt/errors.hpp"

namespace cpqt::tools {

std::string git_blob_sha1(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : digest) {
    out += hex[c >> 4];
    out += hex[c & 15];
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns,
                     const std::string& command, const Config& config)
    : path_(path), columns_(columns.size()) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  file_ = std::fopen(path.c_str(), "wb");
  if (file_ == nullptr) throw InvalidArgument("cannot write " + path.string());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    std::fputs(columns[i].c_str(), file_);
    std::fputc(i + 1 == columns.size() ? '\n' : ',', file_);
  }
  const std::string echo = config.echo();
  std::ofstream meta(path.string() + ".meta", std::ios::binary);
  meta << "command = " << command << "\n"
       << "csv = " << path.filename().string() << "\n"
       << "config_sha1 = " << git_blob_sha1(echo) << "\n"
       << "[config]\n"
       << echo;
  if (!meta) throw InvalidArgument("cannot write " + path.string() + ".meta");
}

CsvWriter::~CsvWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw DimensionMismatch("CsvWriter: wrong column count");
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::fputs(format_double(values[i]).c_str(), file_);
    std::fputc(i + 1 == values.size() ? '\n' : ',', file_);
  }
}

void CsvWriter::close() {
  if (file_ != nullptr) {
    if (std::fclose(file_) != 0) throw InvalidArgument("error closing " + path_.string());
    file_ = nullptr;
  }
}

Check make_check(const std::string& name, double value, const std::string& comparison,
                 double threshold, const std::string& note) {
  bool pass = false;
  if (comparison == "<=") pass = value <= threshold;
  else if (comparison == ">=") pass = value >= threshold;
  else if (comparison == "<") pass = value < threshold;
  else if (comparison == ">") pass = value > threshold;
  else if (comparison == "==") pass = value == threshold;
  else throw InvalidArgument("make_check: unknown comparison " + comparison);
  return {name, value, threshold, comparison, pass && !std::isnan(value), note};
}

bool RunSummary::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json RunSummary::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["wall_seconds"] = wall_seconds;
  j["pass"] = pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj{{"name", c.name},         {"value", c.value}, {"threshold", c.threshold},
                      {"comparison", c.comparison}, {"pass", c.pass}};
    if (!c.note.empty()) cj["note"] = c.note;
    j["checks"].push_back(cj);
  }
  j["info"] = info;
  return j;
}

void write_summary(const std::filesystem::path& path, const RunSummary& summary) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  f << summary.to_json().dump(2) << "\n";
  if (!f) throw InvalidArgument("cannot write " + path.string());
}

}  // namespace cpqt::tools
