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

#ifndef LEXPLAIN_EXPLAIN_RECONSTRUCT_H_
#define LEXPLAIN_EXPLAIN_RECONSTRUCT_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexplain/explain/path.h"
#include "lexplain/featurize/feature_space.h"
#include "lexplain/utf8.h"

namespace lexplain::explain {

using featurize::FeatureKind;
using featurize::FeatureSpace;

// Char-grams shorter than this are dropped during reconstruction.
inline constexpr std::size_t kMinReconstructedLength = 4;

struct Reconstruction {
  enum class Outcome { kDiscarded, kExpanded, kSelf };
  Outcome outcome = Outcome::kSelf;
  // Pool feature absorbing the char-gram when outcome is kExpanded.
  int target = -1;
};

// Decides what a char-gram feature stands for, given the other relevant
// features of its pool:
//   1. fewer than 4 characters: discarded;
//   2. else the longest word-gram in the pool containing it;
//   3. else the longest strictly longer char-gram in the pool containing it;
//   4. else the char-gram is its own term.
// Length ties go to the higher pool frequency, then to the smaller text.
inline Reconstruction ReconstructTerm(int char_gram, std::span<const RelevantFeature> pool,
                                      const FeatureSpace& fs) {
  const featurize::Feature& cg = fs[static_cast<std::size_t>(char_gram)];
  const std::size_t cg_length = utf8::Length(cg.text);
  if (cg_length < kMinReconstructedLength) return {Reconstruction::Outcome::kDiscarded, -1};

  const auto search = [&](FeatureKind kind) -> std::optional<int> {
    std::optional<int> best;
    std::size_t best_length = 0;
    std::int64_t best_frequency = 0;
    for (const RelevantFeature& rf : pool) {
      if (rf.feature == char_gram) continue;
      const featurize::Feature& f = fs[static_cast<std::size_t>(rf.feature)];
      if (f.kind != kind || f.text.find(cg.text) == std::string::npos) continue;
      const std::size_t length = utf8::Length(f.text);
      if (kind == FeatureKind::kChar && length <= cg_length) continue;
      const bool better =
          !best || length > best_length ||
          (length == best_length &&
           (rf.frequency > best_frequency ||
            (rf.frequency == best_frequency &&
             f.text < fs[static_cast<std::size_t>(*best)].text)));
      if (better) {
        best = rf.feature;
        best_length = length;
        best_frequency = rf.frequency;
      }
    }
    return best;
  };
  if (const auto word = search(FeatureKind::kWord)) {
    return {Reconstruction::Outcome::kExpanded, *word};
  }
  if (const auto longer = search(FeatureKind::kChar)) {
    return {Reconstruction::Outcome::kExpanded, *longer};
  }
  return {Reconstruction::Outcome::kSelf, -1};
}

struct Term {
  std::string text;
  std::int64_t frequency = 0;
  bool operator==(const Term&) const = default;
};

struct ReconstructedPool {
  // Descending frequency, ties by ascending text.
  std::vector<Term> terms;
  // Term each surviving pool feature ended up in. Discarded features are absent.
  std::map<int, std::string> expansions;
  std::int64_t discarded_frequency = 0;
};

// Reconstructs every char-gram of a pool and merges frequencies into the
// absorbing features. Char-grams are processed shortest first so that mass
// moved into a longer char-gram follows it if that one is absorbed later.
inline ReconstructedPool ReconstructPool(std::span<const RelevantFeature> pool,
                                         const FeatureSpace& fs) {
  std::map<int, std::int64_t> frequency;
  for (const RelevantFeature& rf : pool) frequency[rf.feature] += rf.frequency;
  std::vector<RelevantFeature> merged;
  for (const auto& [feature, f] : frequency) merged.push_back({feature, f});

  std::vector<int> char_grams;
  for (const RelevantFeature& rf : merged) {
    if (fs[static_cast<std::size_t>(rf.feature)].kind == FeatureKind::kChar) {
      char_grams.push_back(rf.feature);
    }
  }
  std::stable_sort(char_grams.begin(), char_grams.end(), [&](int a, int b) {
    return utf8::Length(fs[static_cast<std::size_t>(a)].text) <
           utf8::Length(fs[static_cast<std::size_t>(b)].text);
  });

  ReconstructedPool out;
  std::map<int, int> absorbed_by;
  for (int cg : char_grams) {
    const Reconstruction r = ReconstructTerm(cg, merged, fs);
    if (r.outcome == Reconstruction::Outcome::kDiscarded) {
      out.discarded_frequency += frequency[cg];
      frequency.erase(cg);
    } else if (r.outcome == Reconstruction::Outcome::kExpanded) {
      frequency[r.target] += frequency[cg];
      frequency.erase(cg);
      absorbed_by[cg] = r.target;
    }
  }
  for (const auto& [feature, f] : frequency) {
    out.terms.push_back({fs[static_cast<std::size_t>(feature)].text, f});
    out.expansions[feature] = fs[static_cast<std::size_t>(feature)].text;
  }
  for (const auto& [cg, target] : absorbed_by) {
    int final_target = target;
    while (absorbed_by.contains(final_target)) final_target = absorbed_by.at(final_target);
    out.expansions[cg] = fs[static_cast<std::size_t>(final_target)].text;
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const Term& a, const Term& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.text < b.text;
  });
  return out;
}

}  // namespace lexplain::explain

#endif  // LEXPLAIN_EXPLAIN_RECONSTRUCT_H_
