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

#ifndef LEXPLAIN_EXPLAIN_EXPLANATION_H_
#define LEXPLAIN_EXPLAIN_EXPLANATION_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lexplain/corpus/judgment.h"
#include "lexplain/error.h"
#include "lexplain/explain/bags.h"
#include "lexplain/explain/dictionary.h"
#include "lexplain/explain/path.h"
#include "lexplain/featurize/vectorize.h"
#include "lexplain/trees/forest.h"
#include "lexplain/utf8.h"

namespace lexplain::explain {

enum class Language { kSpanish, kEnglish };

inline Language ParseLanguage(std::string_view name) {
  if (name == "es") return Language::kSpanish;
  if (name == "en") return Language::kEnglish;
  throw Error("unknown language '" + std::string(name) + "' (expected es or en)");
}

struct Explanation {
  std::string judgment_id;
  std::string jurisdiction;
  std::string category;
  std::vector<std::string> dictionary_terms;
  std::vector<std::string> other_terms;

  bool operator==(const Explanation&) const = default;
};

struct ExplainOptions {
  std::size_t m_max = 16;
  std::size_t p_max = 10;
  // Without a dictionary every candidate goes to the other terms.
  bool dictionary_optional = false;
};

// Terms that the trees agreeing with the forest used to route v, as bag
// expansions of the relevant features.
inline std::set<std::string> JudgmentTerms(const trees::ForestModel& forest, int category,
                                           const featurize::CountVector& v, const CategoryBag& bag,
                                           const FeatureSpace& fs) {
  std::set<std::string> terms;
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    const DecisionPath path = TracePath(forest.trees[t], v, static_cast<int>(t));
    if (path.leaf_category != category) continue;
    for (const RelevantFeature& rf : RelevantFeatures(path, forest.trees[t])) {
      if (auto it = bag.expansions.find(rf.feature); it != bag.expansions.end()) {
        terms.insert(it->second);
        continue;
      }
      const featurize::Feature& f = fs[static_cast<std::size_t>(rf.feature)];
      if (f.kind == FeatureKind::kWord || utf8::Length(f.text) >= kMinReconstructedLength) {
        terms.insert(f.text);
      }
    }
  }
  return terms;
}

inline Explanation ExplainJudgment(const trees::ForestModel& forest, std::string_view judgment_id,
                                   const featurize::CountVector& v,
                                   std::span<const CategoryBag> bags,
                                   std::span<const ExpertDictionary> dictionaries,
                                   const FeatureSpace& fs, const std::string& jurisdiction,
                                   const ExplainOptions& options = {}) {
  const int category = trees::PredictForest(forest, v);
  const std::string& name = forest.categories[static_cast<std::size_t>(category)];
  const CategoryBag* bag = FindBag(bags, name);
  if (bag == nullptr) throw Error("no bag for " + jurisdiction + " / " + name);
  const ExpertDictionary* dict = nullptr;
  for (const ExpertDictionary& d : dictionaries) {
    if (d.category == name) dict = &d;
  }
  if (dict == nullptr && !options.dictionary_optional) {
    throw Error("no expert dictionary for " + jurisdiction + " / " + name);
  }

  Explanation e{std::string(judgment_id), jurisdiction, name, {}, {}};
  const std::set<std::string> relevant = JudgmentTerms(forest, category, v, *bag, fs);
  for (const Term& t : bag->terms) {
    if (!relevant.contains(t.text)) continue;
    if (dict != nullptr && dict->Accepts(t.text)) {
      if (e.dictionary_terms.size() < options.m_max) e.dictionary_terms.push_back(t.text);
    } else if (e.other_terms.size() < options.p_max) {
      e.other_terms.push_back(t.text);
    }
  }
  return e;
}

namespace internal {

// Terms keep the blanks of their char-grams; they are trimmed for display.
inline std::string Upper(std::string_view term) {
  std::string out;
  for (char32_t cp : utf8::Decode(corpus::internal::Trim(term))) {
    utf8::Append(out, utf8::ToUpperAscii(cp));
  }
  return out;
}

inline std::string JoinComma(std::span<const std::string> terms, std::string_view none) {
  if (terms.empty()) return std::string(none);
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += ", ";
    out += Upper(terms[i]);
  }
  return out;
}

inline std::string JoinAnd(std::span<const std::string> terms) {
  if (terms.empty()) return "none";
  if (terms.size() == 1) return Upper(terms[0]);
  if (terms.size() == 2) return Upper(terms[0]) + " and " + Upper(terms[1]);
  std::string out;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) out += Upper(terms[i]) + ", ";
  return out + "and " + Upper(terms.back());
}

}  // namespace internal

inline std::string Render(const Explanation& e, Language language) {
  if (language == Language::kSpanish) {
    return "La clasificación de la sentencia " + e.judgment_id + " de la jurisdicción " +
           e.jurisdiction + " en el derecho " + e.category +
           " puede explicarse por los términos relevantes: " +
           internal::JoinComma(e.dictionary_terms, "ninguno") +
           ". Otros términos tenidos en cuenta son " +
           internal::JoinComma(e.other_terms, "ninguno") + ".";
  }
  return "The classification of the sentence " + e.judgment_id + " of jurisdiction " +
         e.jurisdiction + " in the law " + e.category +
         " can be explained by the relevant terms " + internal::JoinAnd(e.dictionary_terms) +
         ". Other terms taken into account are: " + internal::JoinComma(e.other_terms, "none") +
         ".";
}

inline nlohmann::json ToJson(const Explanation& e) {
  return {{"id", e.judgment_id},
          {"jurisdiction", e.jurisdiction},
          {"category", e.category},
          {"dictionary_terms", e.dictionary_terms},
          {"other_terms", e.other_terms},
          {"es", Render(e, Language::kSpanish)},
          {"en", Render(e, Language::kEnglish)}};
}

}  // namespace lexplain::explain

#endif  // LEXPLAIN_EXPLAIN_EXPLANATION_H_
