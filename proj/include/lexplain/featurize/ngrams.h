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

#ifndef LEXPLAIN_FEATURIZE_NGRAMS_H_
#define LEXPLAIN_FEATURIZE_NGRAMS_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lexplain/error.h"
#include "lexplain/utf8.h"

namespace lexplain::featurize {

struct NgramConfig {
  int char_min = 3;
  int char_max = 7;
  // Word-grams of 1..word_max words.
  int word_max = 2;

  void Validate() const {
    if (char_min < 1 || char_max < char_min) {
      throw Error("invalid char-gram range [" + std::to_string(char_min) + "," +
                  std::to_string(char_max) + "]");
    }
    if (word_max < 1) throw Error("word-gram size must be at least 1");
  }
  bool operator==(const NgramConfig&) const = default;
};

// Calls fn(std::string_view gram) for every window of n characters,
// char_min <= n <= char_max, blanks included. Windows are counted in code
// points, so multi-byte letters are never cut.
template <typename Fn>
void ForEachCharGram(std::string_view text, int char_min, int char_max, Fn&& fn) {
  const std::vector<std::size_t> b = utf8::Boundaries(text);
  const std::size_t chars = b.size() - 1;
  for (std::size_t start = 0; start < chars; ++start) {
    for (int n = char_min; n <= char_max; ++n) {
      const std::size_t end = start + static_cast<std::size_t>(n);
      if (end > chars) break;
      fn(text.substr(b[start], b[end] - b[start]));
    }
  }
}

// Words are maximal runs of non-blank characters; only ' ' separates words.
inline std::vector<std::string_view> SplitWords(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ') ++pos;
    if (pos > start) words.push_back(text.substr(start, pos - start));
  }
  return words;
}

// Calls fn(std::string_view gram) for every run of 1..word_max adjacent words,
// joined by a single blank.
template <typename Fn>
void ForEachWordGram(std::string_view text, int word_max, Fn&& fn) {
  const std::vector<std::string_view> words = SplitWords(text);
  std::string joined;
  for (std::size_t i = 0; i < words.size(); ++i) {
    fn(words[i]);
    for (int n = 2; n <= word_max && i + n <= words.size(); ++n) {
      const std::string_view last = words[i + n - 1];
      const std::size_t begin = static_cast<std::size_t>(words[i].data() - text.data());
      const std::size_t end = static_cast<std::size_t>(last.data() - text.data()) + last.size();
      const std::string_view span = text.substr(begin, end - begin);
      std::size_t single_spaced = static_cast<std::size_t>(n - 1);
      for (int k = 0; k < n; ++k) single_spaced += words[i + k].size();
      if (span.size() == single_spaced) {
        fn(span);
        continue;
      }
      joined.assign(words[i]);
      for (int k = 1; k < n; ++k) joined.append(" ").append(words[i + k]);
      fn(std::string_view(joined));
    }
  }
}

using GramCounts = std::map<std::string, std::size_t, std::less<>>;

inline GramCounts ExtractCharGrams(std::string_view text, int char_min = 3,
                                   int char_max = 7) {
  GramCounts grams;
  ForEachCharGram(text, char_min, char_max, [&](std::string_view g) {
    auto it = grams.find(g);
    if (it == grams.end()) it = grams.emplace(std::string(g), 0).first;
    ++it->second;
  });
  return grams;
}

inline GramCounts ExtractWordGrams(std::string_view text, int word_max = 2) {
  GramCounts grams;
  ForEachWordGram(text, word_max, [&](std::string_view g) {
    auto it = grams.find(g);
    if (it == grams.end()) it = grams.emplace(std::string(g), 0).first;
    ++it->second;
  });
  return grams;
}

}  // namespace lexplain::featurize

#endif  // LEXPLAIN_FEATURIZE_NGRAMS_H_
