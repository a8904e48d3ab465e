/*
 * Copyright 2026 The Lexplain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LEXPLAIN_CORPUS_INGEST_H_
#define LEXPLAIN_CORPUS_INGEST_H_

#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "lexplain/corpus/judgment.h"
#include "lexplain/error.h"

namespace lexplain::corpus {

struct IngestIssue {
  std::size_t line = 0;
  std::string message;
};

// Raised when at least one record is malformed. Lists every issue found.
class CorpusError : public Error {
 public:
  CorpusError(const std::string& source, std::vector<IngestIssue> issues)
      : Error(Format(source, issues)), issues_(std::move(issues)) {}

  const std::vector<IngestIssue>& issues() const { return issues_; }

 private:
  static std::string Format(const std::string& source,
                            const std::vector<IngestIssue>& issues) {
    std::string out = source + ": " + std::to_string(issues.size()) +
                      " malformed record(s)";
    constexpr std::size_t kShown = 20;
    for (std::size_t i = 0; i < issues.size() && i < kShown; ++i) {
      out += "\n  line " + std::to_string(issues[i].line) + ": " +
             issues[i].message;
    }
    if (issues.size() > kShown) out += "\n  ...";
    return out;
  }

  std::vector<IngestIssue> issues_;
};

namespace internal {

inline std::string RequiredString(const nlohmann::json& record,
                                  const char* key) {
  const auto it = record.find(key);
  if (it == record.end()) throw Error(std::string("missing field '") + key + "'");
  if (!it->is_string()) {
    throw Error(std::string("field '") + key + "' is not a string");
  }
  return it->get<std::string>();
}

inline std::optional<std::string> OptionalString(const nlohmann::json& record,
                                                 const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(std::string("field '") + key + "' is not a string");
  }
  return it->get<std::string>();
}

}  // namespace internal

// Parses one corpus record. Throws Error describing the problem.
inline Judgment ParseJudgment(const nlohmann::json& record) {
  if (!record.is_object()) throw Error("record is not an object");
  Judgment j;
  j.id = internal::RequiredString(record, "id");
  if (j.id.empty()) throw Error("empty id");
  j.jurisdiction = internal::RequiredString(record, "jurisdiction");
  if (j.jurisdiction.empty()) throw Error("empty jurisdiction");
  j.header = internal::RequiredString(record, "header");
  j.fundamentals = internal::RequiredString(record, "fundamentals");
  j.precedents = internal::OptionalString(record, "precedents");
  j.decision = internal::OptionalString(record, "decision");
  j.primary_category = internal::RequiredString(record, "primary_category");
  if (const auto it = record.find("alt_categories");
      it != record.end() && !it->is_null()) {
    if (!it->is_array()) throw Error("field 'alt_categories' is not an array");
    for (const auto& label : *it) {
      if (!label.is_string()) throw Error("alternative category is not a string");
      j.alt_categories.push_back(label.get<std::string>());
    }
  }
  if (std::string violation = j.LabelViolation(); !violation.empty()) {
    throw Error(violation);
  }
  return j;
}

inline nlohmann::json ToJson(const Judgment& j) {
  nlohmann::json record = {{"id", j.id},
                           {"jurisdiction", j.jurisdiction},
                           {"header", j.header}};
  record["precedents"] = j.precedents ? nlohmann::json(*j.precedents) : nullptr;
  record["fundamentals"] = j.fundamentals;
  record["decision"] = j.decision ? nlohmann::json(*j.decision) : nullptr;
  record["primary_category"] = j.primary_category;
  record["alt_categories"] = j.alt_categories;
  return record;
}

// Reads line-delimited JSON records and groups them by jurisdiction. Datasets
// come back sorted by jurisdiction name; judgments keep corpus order.
inline std::vector<JurisdictionDataset> IngestCorpus(
    std::istream& in, const std::string& source = "<corpus>") {
  std::vector<IngestIssue> issues;
  std::map<std::string, std::vector<Judgment>> grouped;
  std::unordered_map<std::string, std::size_t> first_line_of_id;
  std::string line;
  std::size_t line_no = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    ++records;
    Judgment j;
    try {
      j = ParseJudgment(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      issues.push_back({line_no, std::string("invalid JSON: ") + e.what()});
      continue;
    } catch (const Error& e) {
      issues.push_back({line_no, e.what()});
      continue;
    }
    const auto [it, inserted] = first_line_of_id.emplace(j.id, line_no);
    if (!inserted) {
      issues.push_back({line_no, "duplicate id '" + j.id +
                                     "' (first seen at line " +
                                     std::to_string(it->second) + ")"});
      continue;
    }
    grouped[j.jurisdiction].push_back(std::move(j));
  }
  if (!issues.empty()) throw CorpusError(source, std::move(issues));
  if (records == 0) throw Error(source + ": empty corpus");
  std::vector<JurisdictionDataset> datasets;
  datasets.reserve(grouped.size());
  for (auto& [name, judgments] : grouped) {
    datasets.emplace_back(name, std::move(judgments));
  }
  return datasets;
}

inline std::vector<JurisdictionDataset> IngestCorpusFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file " + path);
  return IngestCorpus(in, path);
}

inline void WriteCorpus(std::ostream& out, const std::vector<Judgment>& judgments) {
  for (const Judgment& j : judgments) out << ToJson(j).dump() << '\n';
}

}  // namespace lexplain::corpus

#endif  // LEXPLAIN_CORPUS_INGEST_H_
