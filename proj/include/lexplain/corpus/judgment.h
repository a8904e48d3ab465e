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

#ifndef LEXPLAIN_CORPUS_JUDGMENT_H_
#define LEXPLAIN_CORPUS_JUDGMENT_H_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexplain/error.h"

namespace lexplain::corpus {

// One court document. Only header and fundamentals feed the classifier; the
// other two sections are carried for completeness.
struct Judgment {
  std::string id;
  std::string jurisdiction;
  std::string header;
  std::optional<std::string> precedents;
  std::string fundamentals;
  std::optional<std::string> decision;
  std::string primary_category;
  std::vector<std::string> alt_categories;

  // Returns an empty string when the label invariants hold, otherwise a
  // description of the first violation.
  std::string LabelViolation() const {
    if (primary_category.empty()) return "empty primary category";
    if (alt_categories.size() > 2) {
      return "more than two alternative categories (" +
             std::to_string(alt_categories.size()) + ")";
    }
    for (std::size_t i = 0; i < alt_categories.size(); ++i) {
      if (alt_categories[i].empty()) return "empty alternative category";
      if (alt_categories[i] == primary_category) {
        return "alternative duplicates primary";
      }
      for (std::size_t k = 0; k < i; ++k) {
        if (alt_categories[k] == alt_categories[i]) {
          return "repeated alternative category";
        }
      }
    }
    return {};
  }

  bool HasLabel(std::string_view category) const {
    return category == primary_category ||
           std::find(alt_categories.begin(), alt_categories.end(), category) !=
               alt_categories.end();
  }
};

namespace internal {
inline std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}
}  // namespace internal

// Text the classifier sees: header and fundamentals joined by one space.
// Precedents and decision are never included.
inline std::string ClassificationText(const Judgment& j) {
  const std::string_view header = internal::Trim(j.header);
  const std::string_view fundamentals = internal::Trim(j.fundamentals);
  if (header.empty()) return std::string(fundamentals);
  if (fundamentals.empty()) return std::string(header);
  std::string out;
  out.reserve(header.size() + fundamentals.size() + 1);
  out.append(header).append(" ").append(fundamentals);
  return out;
}

// All judgments of one jurisdiction, in corpus order.
class JurisdictionDataset {
 public:
  JurisdictionDataset() = default;

  JurisdictionDataset(std::string jurisdiction, std::vector<Judgment> judgments)
      : jurisdiction_(std::move(jurisdiction)),
        judgments_(std::move(judgments)) {
    for (const Judgment& j : judgments_) {
      if (j.jurisdiction != jurisdiction_) {
        throw Error("judgment " + j.id + " belongs to jurisdiction '" +
                    j.jurisdiction + "', not '" + jurisdiction_ + "'");
      }
      ++category_counts_[j.primary_category];
    }
  }

  const std::string& jurisdiction() const { return jurisdiction_; }
  const std::vector<Judgment>& judgments() const { return judgments_; }
  const std::map<std::string, std::size_t>& category_counts() const {
    return category_counts_;
  }
  std::size_t size() const { return judgments_.size(); }
  bool empty() const { return judgments_.empty(); }

  // Every label that occurs in the dataset, first or alternative, sorted.
  std::vector<std::string> LabelSet() const {
    std::vector<std::string> labels;
    for (const Judgment& j : judgments_) {
      labels.push_back(j.primary_category);
      labels.insert(labels.end(), j.alt_categories.begin(),
                    j.alt_categories.end());
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
  }

  const Judgment* Find(std::string_view id) const {
    for (const Judgment& j : judgments_) {
      if (j.id == id) return &j;
    }
    return nullptr;
  }

 private:
  std::string jurisdiction_;
  std::vector<Judgment> judgments_;
  std::map<std::string, std::size_t> category_counts_;
};

}  // namespace lexplain::corpus

#endif  // LEXPLAIN_CORPUS_JUDGMENT_H_
