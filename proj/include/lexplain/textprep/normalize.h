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

#ifndef LEXPLAIN_TEXTPREP_NORMALIZE_H_
#define LEXPLAIN_TEXTPREP_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

#include "lexplain/utf8.h"

namespace lexplain::textprep {

// Removes accents, diaeresis and other diacritical marks: combining marks are
// dropped and precomposed Latin letters map to their base letter (so "ñ" maps
// to "n"). Case is preserved and every other character is left untouched.
inline std::string StripDiacritics(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::DecodeOne(text, pos);
    if (utf8::IsCombiningMark(cp)) continue;
    const char32_t base = utf8::LatinBase(cp);
    utf8::Append(out, base != 0 ? base : cp);
  }
  return out;
}

inline std::string ToLower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) utf8::Append(out, utf8::ToLower(utf8::DecodeOne(text, pos)));
  return out;
}

// Lowercase, then strip diacritics. The canonical form of every token,
// stop word and lemma-map key.
inline std::string Fold(std::string_view text) {
  return StripDiacritics(ToLower(text));
}

// Maximal runs of letters and digits. Punctuation, symbols and whitespace
// separate tokens.
inline std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8::DecodeOne(text, pos);
    if (utf8::IsWordChar(cp)) {
      current.append(text.substr(start, pos - start));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace lexplain::textprep

#endif  // LEXPLAIN_TEXTPREP_NORMALIZE_H_
