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

#include <sstream>

#include "lexplain/explain/bags.h"
#include "lexplain/explain/dictionary.h"
#include "lexplain/explain/explanation.h"
#include "lexplain/explain/path.h"
#include "lexplain/explain/reconstruct.h"
#include "lexplain/random.h"
#include "lexplain/trees/model_io.h"

namespace lexplain::explain {
namespace {

using featurize::CountVector;
using featurize::Feature;

FeatureSpace Space(const std::vector<std::pair<FeatureKind, std::string>>& grams) {
  std::vector<Feature> features;
  for (const auto& [kind, text] : grams) {
    Feature f;
    f.kind = kind;
    f.text = text;
    f.n = kind == FeatureKind::kChar ? static_cast<int>(utf8::Length(text)) : 1;
    features.push_back(f);
  }
  std::sort(features.begin(), features.end(), FeatureSpace::Less);
  for (std::size_t i = 0; i < features.size(); ++i) features[i].index = static_cast<int>(i);
  return FeatureSpace(std::move(features), 1, {});
}

int Id(const FeatureSpace& fs, FeatureKind kind, const std::string& text) {
  return *fs.Find(kind, text);
}

trees::TreeNode Leaf(std::vector<std::int64_t> counts, int depth) {
  trees::TreeNode n;
  n.category_counts = std::move(counts);
  n.depth = depth;
  return n;
}

// Root tests feature > 0.5; "left" and "right" are the leaf histograms.
trees::TreeModel Stump(int feature, std::vector<std::int64_t> left, std::vector<std::int64_t> right,
                       std::vector<std::string> categories, std::size_t num_features) {
  trees::TreeModel t;
  t.categories = categories;
  t.num_features = num_features;
  trees::TreeNode root;
  root.feature = feature;
  root.threshold = 0.5;
  root.left = 1;
  root.right = 2;
  root.category_counts.resize(left.size());
  for (std::size_t c = 0; c < left.size(); ++c) root.category_counts[c] = left[c] + right[c];
  t.nodes = {root, Leaf(left, 1), Leaf(right, 1)};
  return t;
}

trees::ForestModel Forest(std::vector<trees::TreeModel> trees) {
  trees::ForestModel f;
  f.categories = trees.front().categories;
  f.num_features = trees.front().num_features;
  f.params.n_estimators = static_cast<int>(trees.size());
  f.trees = std::move(trees);
  return f;
}

CountVector Vec(std::vector<CountVector::Entry> entries) {
  CountVector v;
  v.entries = std::move(entries);
  return v;
}

TEST(PathTest, SingleLeafHasNoBranches) {
  trees::TreeModel t;
  t.categories = {"a", "b"};
  t.nodes = {Leaf({1, 4}, 0)};
  const DecisionPath p = TracePath(t, {});
  EXPECT_EQ(p.nodes, std::vector<int>{0});
  EXPECT_TRUE(p.branches.empty());
  EXPECT_EQ(p.leaf_category, 1);
  EXPECT_TRUE(RelevantFeatures(p, t).empty());
}

TEST(PathTest, RightBranchWhenCountExceedsThreshold) {
  const trees::TreeModel t = Stump(0, {3, 0}, {0, 3}, {"a", "b"}, 1);
  const DecisionPath right = TracePath(t, Vec({{0, 1}}));
  EXPECT_EQ(right.nodes, (std::vector<int>{0, 2}));
  EXPECT_EQ(right.branches, std::vector<Branch>{Branch::kRight});
  EXPECT_EQ(RelevantFeatures(right, t), (std::vector<RelevantFeature>{{0, 1}}));
  const DecisionPath left = TracePath(t, {});
  EXPECT_EQ(left.branches, std::vector<Branch>{Branch::kLeft});
  EXPECT_TRUE(RelevantFeatures(left, t).empty());
}

TEST(PathTest, RepeatedFeatureAccumulates) {
  // f0 > 0.5, then f1 > 0.5, then f0 > 2.5.
  trees::TreeModel t;
  t.categories = {"a", "b"};
  t.num_features = 2;
  const auto split = [](int f, double thr, int l, int r, int depth) {
    trees::TreeNode n;
    n.feature = f;
    n.threshold = thr;
    n.left = l;
    n.right = r;
    n.depth = depth;
    n.category_counts = {1, 1};
    return n;
  };
  t.nodes = {split(0, 0.5, 1, 2, 0), Leaf({1, 0}, 1), split(1, 0.5, 3, 4, 1), Leaf({1, 0}, 2),
             split(0, 2.5, 5, 6, 2), Leaf({1, 0}, 3), Leaf({0, 1}, 3)};
  const DecisionPath p = TracePath(t, Vec({{0, 3}, {1, 1}}));
  EXPECT_EQ(p.leaf(), 6);
  EXPECT_EQ(RelevantFeatures(p, t), (std::vector<RelevantFeature>{{0, 2}, {1, 1}}));
}

TEST(PathTest, ContractLeafThroughCharGram) {
  const FeatureSpace fs = Space({{FeatureKind::kChar, "hipotec"}, {FeatureKind::kWord, "penal"}});
  const int hip = Id(fs, FeatureKind::kChar, "hipotec");
  const trees::TreeModel t =
      Stump(hip, {5, 1}, {0, 6}, {"Derecho Penal", "Derecho de Obligaciones y Contratos"}, fs.size());
  const DecisionPath p = TracePath(t, Vec({{hip, 2}}));
  EXPECT_EQ(t.categories[static_cast<std::size_t>(p.leaf_category)],
            "Derecho de Obligaciones y Contratos");
  EXPECT_EQ(RelevantFeatures(p, t).front().feature, hip);
}

TEST(ReconstructTest, CharGramExpandsToWordGram) {
  const FeatureSpace fs = Space({{FeatureKind::kChar, "hipotec"}, {FeatureKind::kWord, "hipotecario"},
                                 {FeatureKind::kChar, "abc"}, {FeatureKind::kChar, "ecari"},
                                 {FeatureKind::kChar, "ecario "}, {FeatureKind::kChar, "zzzz"}});
  const int hip = Id(fs, FeatureKind::kChar, "hipotec");
  const int word = Id(fs, FeatureKind::kWord, "hipotecario");
  const std::vector<RelevantFeature> pool = {{hip, 3}, {word, 1}};
  const Reconstruction r = ReconstructTerm(hip, pool, fs);
  EXPECT_EQ(r.outcome, Reconstruction::Outcome::kExpanded);
  EXPECT_EQ(fs[static_cast<std::size_t>(r.target)].text, "hipotecario");

  const ReconstructedPool rp = ReconstructPool(pool, fs);
  EXPECT_EQ(rp.terms, (std::vector<Term>{{"hipotecario", 4}}));
  EXPECT_EQ(rp.expansions.at(hip), "hipotecario");
}

TEST(ReconstructTest, ShortGramsDropAndLongerCharGramsAbsorb) {
  const FeatureSpace fs = Space({{FeatureKind::kChar, "abc"}, {FeatureKind::kChar, "ecari"},
                                 {FeatureKind::kChar, "ecario "}, {FeatureKind::kChar, "zzzz"}});
  const int abc = Id(fs, FeatureKind::kChar, "abc");
  const int ecari = Id(fs, FeatureKind::kChar, "ecari");
  const int ecario = Id(fs, FeatureKind::kChar, "ecario ");
  const int z = Id(fs, FeatureKind::kChar, "zzzz");
  const std::vector<RelevantFeature> pool = {{abc, 2}, {ecari, 1}, {ecario, 1}, {z, 5}};
  EXPECT_EQ(ReconstructTerm(abc, pool, fs).outcome, Reconstruction::Outcome::kDiscarded);
  const Reconstruction r = ReconstructTerm(ecari, pool, fs);
  EXPECT_EQ(r.outcome, Reconstruction::Outcome::kExpanded);
  EXPECT_EQ(r.target, ecario);
  EXPECT_EQ(ReconstructTerm(z, pool, fs).outcome, Reconstruction::Outcome::kSelf);

  const ReconstructedPool rp = ReconstructPool(pool, fs);
  EXPECT_EQ(rp.terms, (std::vector<Term>{{"zzzz", 5}, {"ecario ", 2}}));
  EXPECT_EQ(rp.discarded_frequency, 2);
  EXPECT_FALSE(rp.expansions.contains(abc));
}

TEST(ReconstructTest, ChainsFollowTheFinalTerm) {
  const FeatureSpace fs = Space({{FeatureKind::kChar, "hipo"}, {FeatureKind::kChar, "hipotec"},
                                 {FeatureKind::kWord, "hipotecario"}});
  const int hipo = Id(fs, FeatureKind::kChar, "hipo");
  const std::vector<RelevantFeature> pool = {{hipo, 1}, {Id(fs, FeatureKind::kChar, "hipotec"), 1}};
  const ReconstructedPool rp = ReconstructPool(pool, fs);
  EXPECT_EQ(rp.terms, (std::vector<Term>{{"hipotec", 2}}));
  const std::vector<RelevantFeature> with_word = {
      {hipo, 1}, {Id(fs, FeatureKind::kChar, "hipotec"), 1}, {Id(fs, FeatureKind::kWord, "hipotecario"), 1}};
  const ReconstructedPool rw = ReconstructPool(with_word, fs);
  EXPECT_EQ(rw.terms, (std::vector<Term>{{"hipotecario", 3}}));
  EXPECT_EQ(rw.expansions.at(hipo), "hipotecario");
}

TEST(ReconstructTest, FrequencyIsConservedOnRandomPools) {
  const std::vector<std::string> words = {"hipotecario", "prestamo", "contrato", "divorcio", "despido"};
  std::vector<std::pair<FeatureKind, std::string>> grams;
  for (const std::string& w : words) {
    grams.push_back({FeatureKind::kWord, w});
    for (std::size_t n = 3; n <= 7 && n <= w.size(); ++n) {
      for (std::size_t s = 0; s + n <= w.size(); ++s) grams.push_back({FeatureKind::kChar, w.substr(s, n)});
    }
  }
  std::sort(grams.begin(), grams.end());
  grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
  const FeatureSpace fs = Space(grams);
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    std::vector<RelevantFeature> pool;
    std::int64_t before = 0;
    const std::size_t n = 1 + rng.Below(15);
    for (std::size_t i = 0; i < n; ++i) {
      const auto f = static_cast<int>(rng.Below(fs.size()));
      const auto freq = static_cast<std::int64_t>(1 + rng.Below(9));
      pool.push_back({f, freq});
      before += freq;
    }
    const ReconstructedPool rp = ReconstructPool(pool, fs);
    std::int64_t after = 0;
    for (const Term& term : rp.terms) after += term.frequency;
    EXPECT_EQ(after, before - rp.discarded_frequency);
    for (const auto& [feature, term] : rp.expansions) {
      EXPECT_NE(term.find(fs[static_cast<std::size_t>(feature)].text), std::string::npos);
    }
  }
}

struct SixDocs {
  FeatureSpace fs = Space({{FeatureKind::kWord, "divorcio"}, {FeatureKind::kWord, "despido"},
                           {FeatureKind::kChar, "cust"}});
  int divorcio = Id(fs, FeatureKind::kWord, "divorcio");
  std::vector<std::string> categories = {"Derecho Laboral", "Derecho de Familia"};
  std::vector<CountVector> docs = {Vec({{divorcio, 2}}), Vec({{divorcio, 1}}), Vec({{divorcio, 3}}),
                                   Vec({{divorcio, 1}}), Vec({}), Vec({{Id(fs, FeatureKind::kWord, "despido"), 2}})};
  trees::TreeModel tree = Stump(divorcio, {2, 0}, {0, 4}, categories, fs.size());
};

TEST(BagTest, SixDocumentFixture) {
  const SixDocs f;
  const auto bags = BuildBags(Forest({f.tree}), f.fs, f.docs, "Civil");
  ASSERT_EQ(bags.size(), 2u);
  EXPECT_TRUE(bags[0].terms.empty());
  EXPECT_EQ(bags[1].category, "Derecho de Familia");
  EXPECT_EQ(bags[1].terms, (std::vector<Term>{{"divorcio", 4}}));
  EXPECT_EQ(FindBag(bags, "Derecho de Familia"), &bags[1]);
  EXPECT_EQ(FindBag(bags, "nope"), nullptr);
}

TEST(BagTest, TwoTreesSumAndNoRightBranchesGiveEmptyBags) {
  const SixDocs f;
  const auto bags = BuildBags(Forest({f.tree, f.tree}), f.fs, f.docs, "Civil");
  EXPECT_EQ(bags[1].terms, (std::vector<Term>{{"divorcio", 8}}));
  const std::vector<CountVector> none = {Vec({}), Vec({})};
  for (const CategoryBag& b : BuildBags(Forest({f.tree}), f.fs, none, "Civil")) EXPECT_TRUE(b.terms.empty());
}

TEST(BagTest, StaticModeCountsEachPathOnce) {
  const SixDocs f;
  const auto bags = BuildBags(Forest({f.tree}), f.fs, {}, "Civil", BagMode::kStatic);
  EXPECT_EQ(bags[1].terms, (std::vector<Term>{{"divorcio", 1}}));
  EXPECT_EQ(ParseBagMode("static"), BagMode::kStatic);
  EXPECT_THROW(ParseBagMode("x"), Error);
}

TEST(BagTest, JsonRoundTrip) {
  const SixDocs f;
  const auto bags = BuildBags(Forest({f.tree}), f.fs, f.docs, "Civil");
  EXPECT_EQ(BagsFromJson(ToJson(bags, "fp")), bags);
  std::ostringstream tsv;
  WriteBagTsv(tsv, bags[1]);
  EXPECT_EQ(tsv.str(), "divorcio\t4\n");
}

CategoryBag BagOf(std::size_t n) {
  CategoryBag b{"Social", "Derecho Laboral", {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    b.terms.push_back({"t" + std::to_string(1000 + i), static_cast<std::int64_t>(500 - i)});
  }
  return b;
}

TEST(QuestionnaireTest, TopTermsInBagOrder) {
  EXPECT_EQ(MakeQuestionnaire(BagOf(3)).rows.size(), 3u);
  const CategoryBag big = BagOf(80);
  const Questionnaire q = MakeQuestionnaire(big);
  ASSERT_EQ(q.rows.size(), kQuestionnaireSize);
  for (std::size_t i = 0; i < q.rows.size(); ++i) {
    EXPECT_EQ(q.rows[i].term, big.terms[i].text);
    EXPECT_FALSE(q.rows[i].q1.has_value());
  }
}

TEST(QuestionnaireTest, SheetRoundTrip) {
  Questionnaire q = MakeQuestionnaire(BagOf(4));
  q.rows[1].q1 = true;
  q.rows[2].q2 = false;
  std::stringstream ss;
  WriteQuestionnaire(ss, q);
  EXPECT_EQ(ReadQuestionnaire(ss), q);
  std::istringstream bad("term\tQ1\tQ2\nx\tmaybe\tno\n");
  EXPECT_THROW(ReadQuestionnaire(bad), ParseError);
}

Questionnaire TableSixteen() {
  Questionnaire q{"Social", "Derecho Laboral", {}};
  q.rows = {{"seguridad social", true, true},
            {"refundido", false, false},
            {"españa", false, false},
            {"español", false, true},
            {"despido", true, true}};
  return q;
}

TEST(DictionaryTest, AcceptsOnlyDoubleYes) {
  const ExpertDictionary d = ImportDictionary(TableSixteen());
  EXPECT_TRUE(d.Accepts("seguridad social"));
  EXPECT_TRUE(d.Accepts("despido"));
  EXPECT_FALSE(d.Accepts("refundido"));
  EXPECT_FALSE(d.Accepts("españa"));
  EXPECT_FALSE(d.Accepts("español"));
  EXPECT_EQ(d.audit.size(), 5u);
  EXPECT_DOUBLE_EQ(d.q1_rate(), 40.0);
  EXPECT_DOUBLE_EQ(d.q2_rate(), 60.0);
  EXPECT_DOUBLE_EQ(d.acceptance_rate(), 40.0);
  EXPECT_TRUE(ImportDictionary(Questionnaire{}).accepted.empty());
}

TEST(DictionaryTest, RejectsIncompleteUnknownAndDuplicateRows) {
  Questionnaire q = TableSixteen();
  q.rows[0].q2.reset();
  EXPECT_THROW(ImportDictionary(q), Error);
  const std::vector<std::string> presented = {"seguridad social", "refundido"};
  EXPECT_THROW(ImportDictionary(TableSixteen(), presented), Error);
  Questionnaire dup = TableSixteen();
  dup.rows.push_back(dup.rows[0]);
  EXPECT_THROW(ImportDictionary(dup), Error);
}

TEST(DictionaryTest, FileRoundTrip) {
  const ExpertDictionary d = ImportDictionary(TableSixteen());
  std::stringstream ss;
  WriteDictionary(ss, d);
  EXPECT_EQ(ReadDictionary(ss), d);
}

TEST(DictionaryTest, InteractiveAnswers) {
  Questionnaire q = MakeQuestionnaire(BagOf(2));
  std::istringstream in("sí\nmaybe\nno\nyes\nY\n");
  std::ostringstream out;
  AnswerInteractively(q, in, out);
  EXPECT_EQ(q.rows[0].q1, true);
  EXPECT_EQ(q.rows[0].q2, false);
  EXPECT_EQ(q.rows[1].q1, true);
  EXPECT_EQ(q.rows[1].q2, true);
  EXPECT_NE(out.str().find("please answer yes or no"), std::string::npos);
  Questionnaire more = MakeQuestionnaire(BagOf(1));
  std::istringstream short_in("yes\n");
  EXPECT_THROW(AnswerInteractively(more, short_in, out), Error);
}

TEST(ExplainTest, FamilyDocumentNamesDivorcio) {
  const SixDocs f;
  const trees::ForestModel forest = Forest({f.tree});
  const auto bags = BuildBags(forest, f.fs, f.docs, "Civil");
  Questionnaire sheet{"Civil", "Derecho de Familia", {{"divorcio", true, true}}};
  const std::vector<ExpertDictionary> dicts = {ImportDictionary(sheet)};
  const Explanation e = ExplainJudgment(forest, "D1", f.docs[0], bags, dicts, f.fs, "Civil");
  EXPECT_EQ(e.category, "Derecho de Familia");
  EXPECT_EQ(e.dictionary_terms, std::vector<std::string>{"divorcio"});
  EXPECT_TRUE(e.other_terms.empty());

  const Explanation none = ExplainJudgment(forest, "D5", f.docs[4], bags, dicts, f.fs, "Civil",
                                           {16, 10, true});
  EXPECT_EQ(none.category, "Derecho Laboral");
  EXPECT_TRUE(none.dictionary_terms.empty());
  EXPECT_TRUE(none.other_terms.empty());
  EXPECT_THROW(ExplainJudgment(forest, "D5", f.docs[4], bags, dicts, f.fs, "Civil"), Error);
}

TEST(ExplainTest, CapsOtherTermsAtTen) {
  std::vector<std::pair<FeatureKind, std::string>> grams;
  for (int i = 0; i < 14; ++i) grams.push_back({FeatureKind::kWord, "w" + std::to_string(10 + i)});
  const FeatureSpace fs = Space(grams);
  const std::vector<std::string> categories = {"Derecho Civil", "Derecho Laboral"};
  std::vector<trees::TreeModel> forest_trees;
  CountVector doc;
  for (int i = 0; i < 14; ++i) {
    forest_trees.push_back(Stump(i, {3, 0}, {0, 3}, categories, fs.size()));
    doc.entries.push_back({i, 1});
  }
  const trees::ForestModel forest = Forest(forest_trees);
  const std::vector<CountVector> reference = {doc};
  const auto bags = BuildBags(forest, fs, reference, "Social");
  Questionnaire sheet{"Social", "Derecho Laboral", {{"w10", true, true}, {"w11", false, true}}};
  const std::vector<ExpertDictionary> dicts = {ImportDictionary(sheet)};
  const Explanation e = ExplainJudgment(forest, "S", doc, bags, dicts, fs, "Social");
  EXPECT_EQ(e.dictionary_terms, std::vector<std::string>{"w10"});
  EXPECT_EQ(e.other_terms.size(), 10u);
  EXPECT_EQ(e.other_terms.front(), "w11");
  const Explanation capped = ExplainJudgment(forest, "S", doc, bags, dicts, fs, "Social", {0, 2, false});
  EXPECT_TRUE(capped.dictionary_terms.empty());
  EXPECT_EQ(capped.other_terms, (std::vector<std::string>{"w11", "w12"}));
}

TEST(RenderTest, SpanishTemplate) {
  const Explanation e{"STS 1/2020", "Civil", "Derecho de Obligaciones y Contratos", {"contrato"},
                      {"ejecucion"}};
  EXPECT_EQ(Render(e, Language::kSpanish),
            "La clasificación de la sentencia STS 1/2020 de la jurisdicción Civil en el derecho "
            "Derecho de Obligaciones y Contratos puede explicarse por los términos relevantes: "
            "CONTRATO. Otros términos tenidos en cuenta son EJECUCION.");
  EXPECT_EQ(Render(e, Language::kEnglish),
            "The classification of the sentence STS 1/2020 of jurisdiction Civil in the law Derecho "
            "de Obligaciones y Contratos can be explained by the relevant terms CONTRATO. Other "
            "terms taken into account are: EJECUCION.");
}

TEST(RenderTest, EmptyAndMultiTermLists) {
  const Explanation empty{"X", "Social", "Derecho Laboral", {}, {}};
  const std::string es = Render(empty, Language::kSpanish);
  EXPECT_NE(es.find("relevantes: ninguno. Otros términos tenidos en cuenta son ninguno."), std::string::npos);
  const std::string en = Render(empty, Language::kEnglish);
  EXPECT_EQ(en.rfind("The classification of the sentence", 0), 0u);
  EXPECT_NE(en.find("relevant terms none. Other terms taken into account are: none."), std::string::npos);

  const Explanation many{"X", "Social", "Derecho Laboral", {"despido", "salario ", "convenio"}, {" cust", "b"}};
  EXPECT_NE(Render(many, Language::kSpanish).find("relevantes: DESPIDO, SALARIO, CONVENIO. Otros términos "
                                                  "tenidos en cuenta son CUST, B."),
            std::string::npos);
  EXPECT_NE(Render(many, Language::kEnglish).find("terms DESPIDO, SALARIO, and CONVENIO."), std::string::npos);
  const Explanation two{"X", "Social", "Derecho Laboral", {"despido", "salario"}, {}};
  EXPECT_NE(Render(two, Language::kEnglish).find("terms DESPIDO and SALARIO."), std::string::npos);
  EXPECT_EQ(ParseLanguage("en"), Language::kEnglish);
  EXPECT_THROW(ParseLanguage("fr"), Error);
}

TEST(RenderTest, JsonCarriesBothLanguages) {
  const Explanation e{"X", "Social", "Derecho Laboral", {"despido"}, {}};
  const nlohmann::json j = ToJson(e);
  EXPECT_EQ(j.at("id"), "X");
  EXPECT_EQ(j.at("dictionary_terms"), nlohmann::json::array({"despido"}));
  EXPECT_EQ(j.at("es"), Render(e, Language::kSpanish));
  EXPECT_EQ(j.at("en"), Render(e, Language::kEnglish));
}

}  // namespace
}  // namespace lexplain::explain
