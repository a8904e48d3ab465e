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

#ifndef LEXPLAIN_TEXTPREP_PREPROCESS_H_
#define LEXPLAIN_TEXTPREP_PREPROCESS_H_

#include <string>
#include <string_view>
#include <vector>

#include "lexplain/corpus/judgment.h"
#include "lexplain/textprep/normalize.h"
#include "lexplain/textprep/resources.h"

namespace lexplain::textprep {

// lowercase -> strip diacritics -> tokenize -> drop stop words -> lemmatize.
// A lemma that is itself a stop word is dropped too.
inline std::vector<std::string> Preprocess(std::string_view text,
                                           const TextResources& resources) {
  std::vector<std::string> out;
  for (std::string& token : Tokenize(Fold(text))) {
    if (resources.IsStopWord(token)) continue;
    const std::string& lemma = resources.Lemma(token);
    if (&lemma != &token && resources.IsStopWord(lemma)) continue;
    out.push_back(&lemma == &token ? std::move(token) : lemma);
  }
  return out;
}

inline std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

inline std::string PreprocessText(std::string_view text,
                                  const TextResources& resources) {
  return JoinTokens(Preprocess(text, resources));
}

// Space-joined lemmas of the judgment's classification text.
inline std::string PreprocessedDocument(const corpus::Judgment& j,
                                        const TextResources& resources) {
  return PreprocessText(corpus::ClassificationText(j), resources);
}

}  // namespace lexplain::textprep

#endif  // LEXPLAIN_TEXTPREP_PREPROCESS_H_
