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

#ifndef LEXPLAIN_FEATURIZE_VECTORIZE_H_
#define LEXPLAIN_FEATURIZE_VECTORIZE_H_

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexplain/featurize/feature_space.h"
#include "lexplain/featurize/ngrams.h"

namespace lexplain::featurize {

// Sparse occurrence counts over a FeatureSpace. Entries are sorted by feature
// index and every count is positive.
struct CountVector {
  struct Entry {
    int feature = 0;
    std::int32_t count = 0;
    bool operator==(const Entry&) const = default;
  };

  std::string doc_id;
  std::vector<Entry> entries;

  // Count of one feature; 0 when absent.
  std::int32_t Count(int feature) const {
    const auto it = std::lower_bound(
        entries.begin(), entries.end(), feature,
        [](const Entry& e, int f) { return e.feature < f; });
    return (it != entries.end() && it->feature == feature) ? it->count : 0;
  }

  std::size_t nnz() const { return entries.size(); }
  bool operator==(const CountVector&) const = default;
};

// Counts the grams of doc that belong to fs, extracted with the same rules
// used to fit it.
inline CountVector Vectorize(std::string_view doc, const FeatureSpace& fs,
                             std::string doc_id = {}) {
  std::unordered_map<int, std::int32_t> counts;
  const NgramConfig& ng = fs.ngrams();
  ForEachCharGram(doc, ng.char_min, ng.char_max, [&](std::string_view g) {
    if (const auto idx = fs.Find(FeatureKind::kChar, g)) ++counts[*idx];
  });
  ForEachWordGram(doc, ng.word_max, [&](std::string_view g) {
    if (const auto idx = fs.Find(FeatureKind::kWord, g)) ++counts[*idx];
  });
  CountVector v;
  v.doc_id = std::move(doc_id);
  v.entries.reserve(counts.size());
  for (const auto& [feature, count] : counts) v.entries.push_back({feature, count});
  std::sort(v.entries.begin(), v.entries.end(),
            [](const auto& a, const auto& b) { return a.feature < b.feature; });
  return v;
}

// Re-expresses v over fs.Subset(kept): kept must be ascending and unique.
inline CountVector Restrict(const CountVector& v, std::span<const int> kept) {
  CountVector out;
  out.doc_id = v.doc_id;
  std::size_t k = 0;
  for (const auto& e : v.entries) {
    while (k < kept.size() && kept[k] < e.feature) ++k;
    if (k == kept.size()) break;
    if (kept[k] == e.feature) out.entries.push_back({static_cast<int>(k), e.count});
  }
  return out;
}

}  // namespace lexplain::featurize

#endif  // LEXPLAIN_FEATURIZE_VECTORIZE_H_
