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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "lexplain/featurize/chi2.h"
#include "lexplain/featurize/feature_space.h"
#include "lexplain/featurize/ngrams.h"
#include "lexplain/featurize/vectorize.h"
#include "lexplain/random.h"
#include "oracles/chi2_oracle.h"
#include "oracles/ngram_oracle.h"

namespace lexplain::featurize {
namespace {

std::set<std::string> Keys(const GramCounts& g) {
  std::set<std::string> out;
  for (const auto& [k, v] : g) out.insert(k);
  return out;
}

TEST(NgramTest, CharWindowsIncludeBlanks) {
  EXPECT_EQ(Keys(ExtractCharGrams("ab cd", 3, 3)), (std::set<std::string>{"ab ", "b c", " cd"}));
  EXPECT_EQ(Keys(ExtractCharGrams("abcd", 4, 4)), (std::set<std::string>{"abcd"}));
  const GramCounts h = ExtractCharGrams("hipotecario");
  EXPECT_TRUE(h.contains("hipotec"));
  EXPECT_TRUE(h.contains("ecario"));
}

TEST(NgramTest, CharWindowsCountCodePoints) {
  const GramCounts g = ExtractCharGrams("añob", 3, 3);
  EXPECT_EQ(Keys(g), (std::set<std::string>{"año", "ñob"}));
}

TEST(NgramTest, WordGrams) {
  EXPECT_EQ(Keys(ExtractWordGrams("a b c")), (std::set<std::string>{"a", "b", "c", "a b", "b c"}));
  EXPECT_EQ(Keys(ExtractWordGrams("x")), (std::set<std::string>{"x"}));
  const GramCounts p = ExtractWordGrams("pension alimenticio pension");
  EXPECT_EQ(p.at("pension"), 2u);
  EXPECT_EQ(p.at("pension alimenticio"), 1u);
}

TEST(NgramTest, MatchesBruteForceOnRandomText) {
  Rng rng(5);
  const std::vector<std::string> words = {"a", "bb", "ccc", "dddd", "añ", "ee"};
  for (int t = 0; t < 200; ++t) {
    std::string text;
    const std::size_t n = 1 + rng.Below(8);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) text += ' ';
      text += words[rng.Below(words.size())];
    }
    const GramCounts w = ExtractWordGrams(text, 2);
    const auto ow = oracle::WordGrams(text, 2);
    EXPECT_EQ(w.size(), ow.size());
    for (const auto& [g, c] : ow) EXPECT_EQ(w.at(g), c) << g;
    const GramCounts ch = ExtractCharGrams(text, 3, 7);
    const auto oc = oracle::CharGrams(text, 3, 7);
    EXPECT_EQ(ch.size(), oc.size());
    for (const auto& [g, c] : oc) EXPECT_EQ(ch.at(g), c) << g;
  }
}

std::vector<std::string> Docs(std::size_t n, const std::string& base) {
  return std::vector<std::string>(n, base);
}

TEST(FeatureSpaceTest, DocumentFrequencyBoundsAreInclusive) {
  std::vector<std::string> docs = Docs(19, "comun");
  docs.push_back("comun unico");
  const FeatureSpace fs = FitFeatureSpace(docs, {0.05, 0.50, {3, 3, 1}});
  EXPECT_TRUE(fs.Find(FeatureKind::kWord, "unico").has_value());
  EXPECT_FALSE(fs.Find(FeatureKind::kWord, "comun").has_value());
  for (const Feature& f : fs.features()) {
    EXPECT_GE(f.doc_frequency, 0.05 - 1e-12);
    EXPECT_LE(f.doc_frequency, 0.50 + 1e-12);
  }

  std::vector<std::string> eleven = Docs(11, "x11");
  for (int i = 0; i < 9; ++i) eleven.push_back("y" + std::to_string(i));
  EXPECT_FALSE(FitFeatureSpace(eleven).Find(FeatureKind::kWord, "x11").has_value());
}

TEST(FeatureSpaceTest, IdenticalDocsLeaveEmptySpace) {
  EXPECT_TRUE(FitFeatureSpace(Docs(10, "mismo texto")).empty());
}

TEST(FeatureSpaceTest, OrderIndependentAndSorted) {
  std::vector<std::string> docs = {"uno dos", "tres cuatro", "cinco seis", "siete ocho"};
  const FeatureSpace a = FitFeatureSpace(docs);
  std::reverse(docs.begin(), docs.end());
  const FeatureSpace b = FitFeatureSpace(docs);
  EXPECT_EQ(a.Fingerprint(), b.Fingerprint());
  ASSERT_FALSE(a.empty());
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_TRUE(FeatureSpace::Less(a[i - 1], a[i]));
  EXPECT_EQ(a[0].kind, FeatureKind::kChar);
  EXPECT_EQ(a[a.size() - 1].kind, FeatureKind::kWord);
}

TEST(FeatureSpaceTest, RoundTripsThroughTsv) {
  const std::vector<std::string> docs = {"uno dos", "tres cuatro", "cinco seis", "sí año"};
  const FeatureSpace fs = FitFeatureSpace(docs);
  std::stringstream ss;
  WriteFeatureSpace(ss, fs);
  const FeatureSpace back = ReadFeatureSpace(ss, "f.tsv");
  EXPECT_EQ(back.Fingerprint(), fs.Fingerprint());
  ASSERT_EQ(back.size(), fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    EXPECT_EQ(back[i].text, fs[i].text);
    EXPECT_EQ(back[i].doc_frequency, fs[i].doc_frequency);
  }
}

TEST(VectorizeTest, CountsMatchHandCount) {
  const std::vector<std::string> docs = {"gato perro gato", "casa mesa", "luz sol", "rio mar"};
  const FeatureSpace fs = FitFeatureSpace(docs, {0.0, 1.0, {3, 4, 2}});
  const CountVector v = Vectorize(docs[0], fs);
  EXPECT_EQ(v.Count(*fs.Find(FeatureKind::kWord, "gato")), 2);
  EXPECT_EQ(v.Count(*fs.Find(FeatureKind::kWord, "perro")), 1);
  EXPECT_EQ(v.Count(*fs.Find(FeatureKind::kWord, "gato perro")), 1);
  EXPECT_EQ(v.Count(*fs.Find(FeatureKind::kChar, "gat")), 2);
  EXPECT_EQ(v.Count(*fs.Find(FeatureKind::kChar, "o g")), 1);
  EXPECT_TRUE(Vectorize("zzz qqq", fs).entries.empty());
}

TEST(VectorizeTest, DoubledDocumentDoublesCounts) {
  const std::vector<std::string> docs = {"pension alimenticio", "divorcio menor", "x y", "z w"};
  const FeatureSpace fs = FitFeatureSpace(docs, {0.0, 1.0, {3, 7, 2}});
  const CountVector once = Vectorize(docs[0], fs);
  // The separator word keeps windows from spanning the junction.
  const CountVector twice = Vectorize(docs[0] + " | " + docs[0], fs);
  for (const auto& e : once.entries) {
    const Feature& f = fs[static_cast<std::size_t>(e.feature)];
    EXPECT_EQ(twice.Count(e.feature), 2 * e.count) << f.text;
  }
}

TEST(VectorizeTest, RestrictReindexes) {
  CountVector v;
  v.entries = {{1, 3}, {4, 1}, {6, 2}};
  const std::vector<int> kept = {0, 4, 6};
  const CountVector r = Restrict(v, kept);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.Count(1), 1);
  EXPECT_EQ(r.Count(2), 2);
}

TEST(Chi2Test, PlantedFeatureScoresTen) {
  std::vector<CountVector> vectors(20);
  std::vector<std::string> labels;
  for (int d = 0; d < 20; ++d) {
    labels.push_back(d < 10 ? "A" : "B");
    if (d < 10) vectors[static_cast<std::size_t>(d)].entries.push_back({0, 1});
    vectors[static_cast<std::size_t>(d)].entries.push_back({1, 3});
  }
  const Chi2Report r = Chi2Select(vectors, labels, 2, 50);
  EXPECT_DOUBLE_EQ(r.scores[0], 10.0);
  EXPECT_DOUBLE_EQ(r.scores[1], 0.0);
  EXPECT_EQ(r.selected, std::vector<int>{0});
  EXPECT_EQ(Chi2Select(vectors, labels, 2, 100).selected, (std::vector<int>{0, 1}));
}

TEST(Chi2Test, MatchesContingencyOracle) {
  Rng rng(77);
  for (int t = 0; t < 30; ++t) {
    const std::size_t k = 2 + rng.Below(3);
    const std::size_t features = 1 + rng.Below(5);
    std::vector<CountVector> vectors;
    std::vector<std::string> labels;
    std::vector<oracle::ContingencyRow> rows(features);
    for (auto& row : rows) {
      row.observed.assign(k, 0);
      row.documents.assign(k, 0);
    }
    for (std::size_t d = 0; d < 12; ++d) {
      const std::size_t c = d < k ? d : rng.Below(k);
      labels.push_back(std::string(1, static_cast<char>('a' + c)));
      CountVector v;
      for (std::size_t f = 0; f < features; ++f) {
        rows[f].documents[c] += 1;
        const auto count = static_cast<std::int32_t>(rng.Below(4));
        if (count > 0) v.entries.push_back({static_cast<int>(f), count});
        rows[f].observed[c] += count;
      }
      vectors.push_back(std::move(v));
    }
    const Chi2Report r = Chi2Select(vectors, labels, features, 40);
    for (std::size_t f = 0; f < features; ++f) {
      const double want = oracle::Chi2(rows[f]);
      EXPECT_NEAR(r.scores[f], want, 1e-9 * std::max(1.0, std::abs(want)));
    }
    for (int s : r.selected) {
      for (std::size_t f = 0; f < features; ++f) {
        if (std::find(r.selected.begin(), r.selected.end(), static_cast<int>(f)) == r.selected.end()) {
          EXPECT_GE(r.scores[static_cast<std::size_t>(s)], r.scores[f]);
        }
      }
    }
  }
}

TEST(Chi2Test, PermutationInvariant) {
  std::vector<CountVector> vectors(6);
  std::vector<std::string> labels = {"a", "a", "b", "b", "c", "c"};
  for (std::size_t d = 0; d < 6; ++d) vectors[d].entries = {{0, static_cast<int>(d + 1)}, {1, 1}};
  const Chi2Report r1 = Chi2Select(vectors, labels, 2);
  std::reverse(vectors.begin(), vectors.end());
  std::reverse(labels.begin(), labels.end());
  const Chi2Report r2 = Chi2Select(vectors, labels, 2);
  EXPECT_NEAR(r1.scores[0], r2.scores[0], 1e-12);
}

TEST(Chi2Test, PercentileCount) {
  EXPECT_EQ(PercentileCount(20, 10), 2u);
  EXPECT_EQ(PercentileCount(20, 11), 3u);
  EXPECT_EQ(PercentileCount(20, 1), 1u);
  EXPECT_EQ(PercentileCount(10, 7), 1u);
  EXPECT_EQ(PercentileCount(50, 7), 4u);
  EXPECT_EQ(PercentileCount(100, 7), 7u);
  EXPECT_EQ(PercentileCount(20, 0), 0u);
}

TEST(Chi2Test, SingleCategoryIsAnError) {
  std::vector<CountVector> vectors(2);
  const std::vector<std::string> labels = {"a", "a"};
  EXPECT_THROW(Chi2Select(vectors, labels, 1), Error);
}

}  // namespace
}  // namespace lexplain::featurize
