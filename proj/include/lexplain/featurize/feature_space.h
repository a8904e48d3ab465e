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

#ifndef LEXPLAIN_FEATURIZE_FEATURE_SPACE_H_
#define LEXPLAIN_FEATURIZE_FEATURE_SPACE_H_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexplain/error.h"
#include "lexplain/featurize/ngrams.h"
#include "lexplain/utf8.h"

namespace lexplain::featurize {

enum class FeatureKind : std::uint8_t { kChar = 0, kWord = 1 };

inline const char* KindName(FeatureKind kind) {
  return kind == FeatureKind::kChar ? "char" : "word";
}

inline FeatureKind ParseKind(std::string_view name) {
  if (name == "char") return FeatureKind::kChar;
  if (name == "word") return FeatureKind::kWord;
  throw Error("unknown feature kind '" + std::string(name) + "'");
}

struct Feature {
  int index = 0;
  FeatureKind kind = FeatureKind::kChar;
  std::string text;
  // Gram size: characters for kChar, words for kWord.
  int n = 0;
  // Number of fitting documents containing the gram.
  std::size_t doc_count = 0;
  double doc_frequency = 0.0;

  bool operator==(const Feature&) const = default;
};

struct FitOptions {
  double min_df = 0.05;
  double max_df = 0.50;
  NgramConfig ngrams;
};

namespace internal {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

inline std::uint64_t Fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string DoubleToString(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace internal

// Fitted vocabulary. Features are ordered by (kind, text) and indexed
// 0..size()-1 in that order.
class FeatureSpace {
 public:
  FeatureSpace() = default;

  FeatureSpace(std::vector<Feature> features, std::size_t fit_document_count,
               NgramConfig ngrams)
      : features_(std::move(features)),
        fit_document_count_(fit_document_count),
        ngrams_(ngrams) {
    for (std::size_t i = 0; i < features_.size(); ++i) {
      Feature& f = features_[i];
      if (f.index != static_cast<int>(i)) {
        throw Error("feature indices must be 0..n-1 without gaps");
      }
      if (i > 0 && !Less(features_[i - 1], f)) {
        throw Error("features must be sorted by (kind, text) without duplicates");
      }
      IndexOf(f.kind).emplace(f.text, f.index);
    }
  }

  std::size_t size() const { return features_.size(); }
  bool empty() const { return features_.empty(); }
  const Feature& operator[](std::size_t i) const { return features_[i]; }
  const std::vector<Feature>& features() const { return features_; }
  std::size_t fit_document_count() const { return fit_document_count_; }
  const NgramConfig& ngrams() const { return ngrams_; }

  std::optional<int> Find(FeatureKind kind, std::string_view text) const {
    const auto& index = IndexOf(kind);
    const auto it = index.find(text);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  // The features at the given indices, re-indexed densely in their original
  // relative order.
  FeatureSpace Subset(std::span<const int> indices) const {
    std::vector<int> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Feature> kept;
    kept.reserve(sorted.size());
    for (int i : sorted) {
      Feature f = features_.at(static_cast<std::size_t>(i));
      f.index = static_cast<int>(kept.size());
      kept.push_back(std::move(f));
    }
    return FeatureSpace(std::move(kept), fit_document_count_, ngrams_);
  }

  // Stable hash of the ordered (kind, text) list, as 16 hex digits.
  std::string Fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Feature& f : features_) {
      h = internal::Fnv1a(h, KindName(f.kind));
      h = internal::Fnv1a(h, std::string_view("\t", 1));
      h = internal::Fnv1a(h, f.text);
      h = internal::Fnv1a(h, std::string_view("\n", 1));
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  static bool Less(const Feature& a, const Feature& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.text < b.text;
  }

 private:
  internal::StringMap<int>& IndexOf(FeatureKind kind) {
    return kind == FeatureKind::kChar ? char_index_ : word_index_;
  }
  const internal::StringMap<int>& IndexOf(FeatureKind kind) const {
    return kind == FeatureKind::kChar ? char_index_ : word_index_;
  }

  std::vector<Feature> features_;
  std::size_t fit_document_count_ = 0;
  NgramConfig ngrams_;
  internal::StringMap<int> char_index_;
  internal::StringMap<int> word_index_;
};

// Keeps every char-gram and word-gram whose document frequency lies in
// [min_df, max_df], both ends inclusive.
inline FeatureSpace FitFeatureSpace(std::span<const std::string> docs,
                                    const FitOptions& options = {}) {
  if (docs.empty()) throw Error("cannot fit a feature space on zero documents");
  if (options.min_df < 0.0 || options.max_df > 1.0 ||
      options.min_df > options.max_df) {
    throw Error("invalid document-frequency bounds [" +
                internal::DoubleToString(options.min_df) + ", " +
                internal::DoubleToString(options.max_df) + "]");
  }
  options.ngrams.Validate();

  struct Stats {
    std::size_t docs = 0;
    std::size_t last_doc = ~std::size_t{0};
  };
  internal::StringMap<Stats> char_df;
  internal::StringMap<Stats> word_df;
  const auto count = [](internal::StringMap<Stats>& df, std::string_view g,
                        std::size_t doc) {
    auto it = df.find(g);
    if (it == df.end()) it = df.emplace(std::string(g), Stats{}).first;
    if (it->second.last_doc != doc) {
      it->second.last_doc = doc;
      ++it->second.docs;
    }
  };
  for (std::size_t d = 0; d < docs.size(); ++d) {
    ForEachCharGram(docs[d], options.ngrams.char_min, options.ngrams.char_max,
                    [&](std::string_view g) { count(char_df, g, d); });
    ForEachWordGram(docs[d], options.ngrams.word_max,
                    [&](std::string_view g) { count(word_df, g, d); });
  }

  const double n_docs = static_cast<double>(docs.size());
  // Tolerance absorbs the decimal representation of the bounds (0.05 * 20).
  const double lo = options.min_df * n_docs - 1e-9;
  const double hi = options.max_df * n_docs + 1e-9;
  std::vector<Feature> kept;
  const auto collect = [&](const internal::StringMap<Stats>& df,
                           FeatureKind kind) {
    for (const auto& [text, stats] : df) {
      const double c = static_cast<double>(stats.docs);
      if (c < lo || c > hi) continue;
      Feature f;
      f.kind = kind;
      f.text = text;
      f.n = kind == FeatureKind::kChar
                ? static_cast<int>(utf8::Length(text))
                : static_cast<int>(SplitWords(text).size());
      f.doc_count = stats.docs;
      f.doc_frequency = c / n_docs;
      kept.push_back(std::move(f));
    }
  };
  collect(char_df, FeatureKind::kChar);
  collect(word_df, FeatureKind::kWord);
  std::sort(kept.begin(), kept.end(), FeatureSpace::Less);
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i].index = static_cast<int>(i);
  return FeatureSpace(std::move(kept), docs.size(), options.ngrams);
}

inline constexpr std::string_view kFeatureSpaceMagic = "# lexplain-features v1";

// Header line, then one "index<TAB>kind<TAB>n<TAB>text<TAB>doc_frequency" row
// per feature.
inline void WriteFeatureSpace(std::ostream& out, const FeatureSpace& fs) {
  out << kFeatureSpaceMagic << " fit_documents=" << fs.fit_document_count()
      << " char_min=" << fs.ngrams().char_min
      << " char_max=" << fs.ngrams().char_max
      << " word_max=" << fs.ngrams().word_max << '\n';
  for (const Feature& f : fs.features()) {
    out << f.index << '\t' << KindName(f.kind) << '\t' << f.n << '\t' << f.text
        << '\t' << internal::DoubleToString(f.doc_frequency) << '\n';
  }
}

inline FeatureSpace ReadFeatureSpace(std::istream& in,
                                     const std::string& source = "<features>") {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with(kFeatureSpaceMagic)) {
    throw ParseError(source, 1, "not a feature-space file");
  }
  std::size_t fit_documents = 0;
  NgramConfig ngrams;
  {
    std::istringstream header(line.substr(kFeatureSpaceMagic.size()));
    std::string field;
    while (header >> field) {
      const std::size_t eq = field.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "fit_documents") fit_documents = std::stoull(value);
      if (key == "char_min") ngrams.char_min = std::stoi(value);
      if (key == "char_max") ngrams.char_max = std::stoi(value);
      if (key == "word_max") ngrams.word_max = std::stoi(value);
    }
  }
  std::vector<Feature> features;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos;) {
      cols.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    cols.push_back(rest);
    if (cols.size() != 5) throw ParseError(source, line_no, "expected 5 columns");
    try {
      Feature f;
      f.index = std::stoi(std::string(cols[0]));
      f.kind = ParseKind(cols[1]);
      f.n = std::stoi(std::string(cols[2]));
      f.text = std::string(cols[3]);
      f.doc_frequency = std::stod(std::string(cols[4]));
      f.doc_count = static_cast<std::size_t>(
          f.doc_frequency * static_cast<double>(fit_documents) + 0.5);
      features.push_back(std::move(f));
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  try {
    return FeatureSpace(std::move(features), fit_documents, ngrams);
  } catch (const Error& e) {
    throw ParseError(source, line_no, e.what());
  }
}

}  // namespace lexplain::featurize

#endif  // LEXPLAIN_FEATURIZE_FEATURE_SPACE_H_
