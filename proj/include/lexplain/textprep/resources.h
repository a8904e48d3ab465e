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

#ifndef LEXPLAIN_TEXTPREP_RESOURCES_H_
#define LEXPLAIN_TEXTPREP_RESOURCES_H_

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lexplain/error.h"
#include "lexplain/textprep/normalize.h"

namespace lexplain::textprep {

// Stop-word list and lemma map. Every entry is stored folded (lowercase, no
// diacritics). Lemma chains are resolved at construction so each lemma is a
// fixed point of the map, which keeps preprocessing idempotent.
class TextResources {
 public:
  TextResources() = default;

  TextResources(const std::vector<std::string>& stop_words,
                const std::vector<std::pair<std::string, std::string>>& lemmas) {
    for (const std::string& w : stop_words) {
      std::string folded = Fold(w);
      if (!folded.empty()) stop_words_.insert(std::move(folded));
    }
    std::unordered_map<std::string, std::string> raw;
    for (const auto& [surface, lemma] : lemmas) {
      const std::string key = Fold(surface);
      const std::string value = Fold(lemma);
      if (Tokenize(key).size() != 1 || Tokenize(key).front() != key) {
        throw Error("lemma map key '" + surface + "' is not a single token");
      }
      if (Tokenize(value).size() != 1 || Tokenize(value).front() != value) {
        throw Error("lemma '" + lemma + "' for '" + surface +
                    "' is not a single token");
      }
      if (key != value) raw[key] = value;
    }
    for (const auto& [key, value] : raw) lemma_map_[key] = Resolve(raw, key);
    for (auto it = lemma_map_.begin(); it != lemma_map_.end();) {
      it = it->first == it->second ? lemma_map_.erase(it) : std::next(it);
    }
  }

  bool IsStopWord(std::string_view folded) const {
    return stop_words_.contains(std::string(folded));
  }

  // Lemma of a folded token; the token itself when unmapped.
  const std::string& Lemma(const std::string& folded) const {
    const auto it = lemma_map_.find(folded);
    return it == lemma_map_.end() ? folded : it->second;
  }

  const std::unordered_set<std::string>& stop_words() const { return stop_words_; }
  const std::unordered_map<std::string, std::string>& lemma_map() const {
    return lemma_map_;
  }

 private:
  // Follows key through raw to a fixed point. A cycle resolves to its
  // lexicographically smallest member.
  static std::string Resolve(
      const std::unordered_map<std::string, std::string>& raw,
      const std::string& key) {
    std::vector<std::string> chain{key};
    std::set<std::string> seen{key};
    while (true) {
      const auto it = raw.find(chain.back());
      if (it == raw.end()) return chain.back();
      if (seen.contains(it->second)) {
        const auto start = std::find(chain.begin(), chain.end(), it->second);
        return *std::min_element(start, chain.end());
      }
      seen.insert(it->second);
      chain.push_back(it->second);
    }
  }

  std::unordered_set<std::string> stop_words_;
  std::unordered_map<std::string, std::string> lemma_map_;
};

namespace internal {
inline bool SkipResourceLine(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
    line.remove_suffix(1);
  }
  return line.empty() || line.front() == '#';
}
}  // namespace internal

// One word per line. Blank lines and lines starting with '#' are ignored.
inline std::vector<std::string> ReadStopWords(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (internal::SkipResourceLine(line)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    words.push_back(line);
  }
  return words;
}

// "surface<TAB>lemma" per line.
inline std::vector<std::pair<std::string, std::string>> ReadLemmas(
    std::istream& in, const std::string& source = "<lemmas>") {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::SkipResourceLine(line)) continue;
    if (line.back() == '\r') line.pop_back();
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source, line_no, "expected 'surface<TAB>lemma'");
    }
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return pairs;
}

inline TextResources LoadTextResources(const std::string& stop_words_path,
                                       const std::string& lemmas_path) {
  std::vector<std::string> stop_words;
  if (!stop_words_path.empty()) {
    std::ifstream in(stop_words_path);
    if (!in) throw Error("cannot open stop-word file " + stop_words_path);
    stop_words = ReadStopWords(in);
  }
  std::vector<std::pair<std::string, std::string>> lemmas;
  if (!lemmas_path.empty()) {
    std::ifstream in(lemmas_path);
    if (!in) throw Error("cannot open lemma file " + lemmas_path);
    lemmas = ReadLemmas(in, lemmas_path);
  }
  try {
    return TextResources(stop_words, lemmas);
  } catch (const Error& e) {
    throw Error(lemmas_path + ": " + e.what());
  }
}

}  // namespace lexplain::textprep

#endif  // LEXPLAIN_TEXTPREP_RESOURCES_H_
