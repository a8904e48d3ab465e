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

#ifndef LEXPLAIN_PIPELINE_PIPELINE_H_
#define LEXPLAIN_PIPELINE_PIPELINE_H_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lexplain/corpus/ingest.h"
#include "lexplain/corpus/judgment.h"
#include "lexplain/corpus/split.h"
#include "lexplain/error.h"
#include "lexplain/eval/metrics.h"
#include "lexplain/explain/bags.h"
#include "lexplain/explain/dictionary.h"
#include "lexplain/explain/explanation.h"
#include "lexplain/featurize/chi2.h"
#include "lexplain/featurize/feature_space.h"
#include "lexplain/featurize/vectorize.h"
#include "lexplain/pipeline/config.h"
#include "lexplain/textprep/normalize.h"
#include "lexplain/textprep/preprocess.h"
#include "lexplain/textprep/resources.h"
#include "lexplain/trees/forest.h"
#include "lexplain/trees/grid_search.h"
#include "lexplain/trees/model_io.h"
#include "lexplain/trees/training_data.h"

namespace lexplain::pipeline {

namespace fs = std::filesystem;

class MissingArtifact : public Error {
 public:
  MissingArtifact(const fs::path& path, std::string_view producer)
      : Error("missing artifact " + path.string() + "; run 'lexplain " + std::string(producer) +
              "' first") {}
};

// File-system name for a jurisdiction or category: folded, with every
// character other than [a-z0-9] replaced by '_'.
inline std::string Slug(std::string_view name) {
  std::string out;
  for (char ch : textprep::Fold(name)) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9');
    if (keep) {
      out += ch;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty()) throw Error("name '" + std::string(name) + "' has no usable characters");
  return out;
}

inline void WriteFile(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("error writing " + path.string());
}

inline std::string ReadFile(const fs::path& path, std::string_view producer) {
  if (!fs::exists(path)) throw MissingArtifact(path, producer);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteJson(const fs::path& path, const nlohmann::json& j) {
  WriteFile(path, j.dump(1) + "\n");
}

inline nlohmann::json ReadJson(const fs::path& path, std::string_view producer) {
  const std::string text = ReadFile(path, producer);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

// Artifact layout under the output directory.
class Workspace {
 public:
  explicit Workspace(fs::path root) : root_(std::move(root)) {}

  const fs::path& root() const { return root_; }
  fs::path Dir(std::string_view jurisdiction) const { return root_ / Slug(jurisdiction); }
  fs::path Split(std::string_view j) const { return Dir(j) / "split.json"; }
  fs::path Features(std::string_view j) const { return Dir(j) / "features.tsv"; }
  fs::path Selection(std::string_view j) const { return Dir(j) / "selection.tsv"; }
  fs::path Model(std::string_view j) const { return Dir(j) / "model.json"; }
  fs::path TrainStats(std::string_view j) const { return Dir(j) / "train_stats.json"; }
  fs::path Tune(std::string_view j) const { return Dir(j) / "tune.json"; }
  fs::path Evaluation(std::string_view j) const { return Dir(j) / "evaluation.json"; }
  fs::path Bags(std::string_view j) const { return Dir(j) / "bags.json"; }
  fs::path BagTsv(std::string_view j, std::string_view c) const {
    return Dir(j) / "bags" / (Slug(c) + ".tsv");
  }
  fs::path Sheet(std::string_view j, std::string_view c) const {
    return Dir(j) / "questionnaires" / (Slug(c) + ".tsv");
  }
  fs::path Dictionary(std::string_view j, std::string_view c) const {
    return Dir(j) / "dictionaries" / (Slug(c) + ".tsv");
  }
  fs::path DictionarySummary(std::string_view j) const {
    return Dir(j) / "dictionaries" / "summary.tsv";
  }
  fs::path Explanations(std::string_view j) const { return Dir(j) / "explanations.jsonl"; }
  fs::path ExplanationText(std::string_view j) const { return Dir(j) / "explanations.txt"; }
  fs::path Summary() const { return root_ / "summary.tsv"; }
  fs::path Report() const { return root_ / "report.tsv"; }
  fs::path RunConfig(std::string_view subcommand) const {
    return root_ / "runs" / (std::string(subcommand) + ".config.json");
  }

 private:
  fs::path root_;
};

inline double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Features and training vectors of one jurisdiction's train set.
struct FeatureStage {
  featurize::FeatureSpace fitted;
  featurize::Chi2Report chi2;
  featurize::FeatureSpace selected;
  std::vector<featurize::CountVector> train_vectors;
  std::vector<int> train_labels;
  std::vector<std::string> categories;
};

// Preprocessed classification text of every judgment listed, by dataset index.
inline std::map<std::size_t, std::string> PreprocessIndices(const corpus::JurisdictionDataset& d,
                                                            std::span<const std::size_t> indices,
                                                            const textprep::TextResources& res) {
  std::map<std::size_t, std::string> docs;
  for (std::size_t i : indices) {
    if (!docs.contains(i)) docs.emplace(i, textprep::PreprocessedDocument(d.judgments()[i], res));
  }
  return docs;
}

// Fits the n-gram space on the train set and keeps the top chi-squared
// percentile. A single-category train set keeps every feature.
inline FeatureStage BuildFeatureStage(const corpus::JurisdictionDataset& d,
                                      const corpus::SplitResult& split,
                                      const std::map<std::size_t, std::string>& docs,
                                      const PipelineConfig& config) {
  std::vector<std::string> train_docs;
  std::vector<std::string> labels;
  for (std::size_t i : split.train) {
    train_docs.push_back(docs.at(i));
    labels.push_back(d.judgments()[i].primary_category);
  }
  FeatureStage stage;
  stage.fitted = featurize::FitFeatureSpace(train_docs, config.features);
  if (stage.fitted.empty()) {
    throw Error("no n-gram of jurisdiction '" + d.jurisdiction() +
                "' falls within the document-frequency bounds");
  }
  std::vector<featurize::CountVector> fitted_vectors;
  for (std::size_t r = 0; r < train_docs.size(); ++r) {
    fitted_vectors.push_back(featurize::Vectorize(train_docs[r], stage.fitted,
                                                  d.judgments()[split.train[r]].id));
  }
  const std::set<std::string> distinct(labels.begin(), labels.end());
  stage.categories.assign(distinct.begin(), distinct.end());
  if (stage.categories.size() >= 2) {
    stage.chi2 = featurize::Chi2Select(fitted_vectors, labels, stage.fitted.size(),
                                       config.chi2_percentile);
  } else {
    stage.chi2.scores.assign(stage.fitted.size(), 0.0);
    stage.chi2.percentile = 100.0;
    for (std::size_t f = 0; f < stage.fitted.size(); ++f) {
      stage.chi2.selected.push_back(static_cast<int>(f));
    }
  }
  stage.selected = stage.fitted.Subset(stage.chi2.selected);
  for (const featurize::CountVector& v : fitted_vectors) {
    stage.train_vectors.push_back(featurize::Restrict(v, stage.chi2.selected));
  }
  for (const std::string& l : labels) {
    stage.train_labels.push_back(static_cast<int>(
        std::lower_bound(stage.categories.begin(), stage.categories.end(), l) -
        stage.categories.begin()));
  }
  return stage;
}

inline trees::ForestModel FitModel(const FeatureStage& stage, const trees::TreeHyperparams& hp,
                                   const trees::ForestParams& fp, trees::ModelKind kind,
                                   unsigned threads) {
  const trees::TrainingData data(stage.train_vectors, stage.train_labels, stage.categories,
                                 stage.selected.size());
  trees::ForestModel model = kind == trees::ModelKind::kTree
                                 ? trees::AsForest(trees::TrainTree(data, hp))
                                 : trees::TrainForest(data, hp, fp, threads);
  model.feature_fingerprint = stage.selected.Fingerprint();
  for (trees::TreeModel& t : model.trees) t.feature_fingerprint = model.feature_fingerprint;
  return model;
}

inline nlohmann::json ModelToJson(const trees::ForestModel& model, trees::ModelKind kind) {
  return kind == trees::ModelKind::kTree ? trees::ToJson(model.trees.front())
                                         : trees::ToJson(model);
}

inline trees::ForestModel ModelFromJson(const nlohmann::json& j) {
  if (j.value("kind", "") == "tree") return trees::AsForest(trees::TreeFromJson(j));
  return trees::ForestFromJson(j);
}

// Runs pipeline subcommands against one output directory. Each stage reads
// its inputs from the artifacts of earlier stages.
class Runner {
 public:
  explicit Runner(PipelineConfig config, std::ostream& log = std::cerr)
      : config_(std::move(config)), ws_(config_.out), log_(log) {}

  const PipelineConfig& config() const { return config_; }
  const Workspace& workspace() const { return ws_; }

  // Per-jurisdiction, per-category judgment counts.
  void Ingest() {
    SaveConfig("ingest");
    std::ostringstream out;
    out << "jurisdiction\tcategory\tjudgments\n";
    for (const corpus::JurisdictionDataset* d : Selected()) {
      for (const auto& [category, n] : d->category_counts()) {
        out << d->jurisdiction() << '\t' << category << '\t' << n << '\n';
      }
      out << d->jurisdiction() << "\t*\t" << d->size() << '\n';
      log_ << d->jurisdiction() << ": " << d->size() << " judgments in "
           << d->category_counts().size() << " categories\n";
    }
    WriteFile(ws_.Summary(), out.str());
  }

  void Split() {
    const std::uint64_t seed = config_.RequireSeed();
    SaveConfig("split");
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const corpus::SplitResult s = corpus::SplitDataset(*d, {seed, config_.stratified});
      nlohmann::json j = corpus::ToJson(s);
      j["seed"] = seed;
      j["stratified"] = config_.stratified;
      WriteJson(ws_.Split(d->jurisdiction()), j);
      log_ << d->jurisdiction() << ": train " << s.train.size() << ", test1 " << s.test1.size()
           << ", test2 " << s.test2.size() << ", discarded " << s.discarded_categories.size()
           << '\n';
    }
  }

  void Train() {
    const std::uint64_t seed = config_.RequireSeed();
    SaveConfig("train");
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const std::string& name = d->jurisdiction();
      const corpus::SplitResult split = LoadSplit(*d);
      trees::ModelKind kind = config_.model;
      trees::TreeHyperparams hp = config_.tree;
      trees::ForestParams fp = config_.forest;
      if (config_.use_tuned) {
        const nlohmann::json tuned = ReadJson(ws_.Tune(name), "tune");
        kind = trees::ParseModelKind(tuned.at("model").get<std::string>());
        hp = trees::TreeHyperparamsFromJson(tuned.at("best").at("hyperparams"));
        fp = trees::ForestParamsFromJson(tuned.at("best").at("forest"));
      }
      hp.seed = seed;
      fp.seed = seed;

      const auto t0 = std::chrono::steady_clock::now();
      const auto docs = PreprocessIndices(*d, split.train, Resources());
      const double preprocess_s = SecondsSince(t0);
      const auto t1 = std::chrono::steady_clock::now();
      const FeatureStage stage = BuildFeatureStage(*d, split, docs, config_);
      const trees::ForestModel model = FitModel(stage, hp, fp, kind, config_.threads);
      const double train_s = SecondsSince(t1);

      std::ostringstream features, selection;
      featurize::WriteFeatureSpace(features, stage.selected);
      featurize::WriteSelectionReport(selection, stage.fitted, stage.chi2);
      WriteFile(ws_.Features(name), features.str());
      WriteFile(ws_.Selection(name), selection.str());
      WriteJson(ws_.Model(name), ModelToJson(model, kind));
      WriteJson(ws_.TrainStats(name), {{"preprocess_seconds", preprocess_s},
                                       {"train_seconds", train_s},
                                       {"fitted_features", stage.fitted.size()},
                                       {"selected_features", stage.selected.size()},
                                       {"train_size", split.train.size()}});
      log_ << name << ": " << stage.fitted.size() << " features, " << stage.selected.size()
           << " selected, " << model.trees.size() << " tree(s) in " << train_s << " s\n";
    }
  }

  void Tune() {
    const std::uint64_t seed = config_.RequireSeed();
    if (config_.grid.empty()) throw Error("tune needs a grid file (--grid)");
    SaveConfig("tune");
    const trees::Grid grid = trees::GridFromJson(ReadJson(config_.grid, "a grid file"));
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const corpus::SplitResult split = LoadSplit(*d);
      const auto docs = PreprocessIndices(*d, split.train, Resources());
      const FeatureStage stage = BuildFeatureStage(*d, split, docs, config_);
      const trees::TrainingData data(stage.train_vectors, stage.train_labels, stage.categories,
                                     stage.selected.size());
      const trees::GridSearchResult r = trees::GridSearch(data, grid, seed, config_.threads);
      WriteJson(ws_.Tune(d->jurisdiction()), trees::ToJson(r, grid.model));
      log_ << d->jurisdiction() << ": best of " << grid.size() << " combinations is "
           << r.rows[r.best].assignment.dump() << " (cv accuracy " << r.rows[r.best].mean_accuracy
           << ")\n";
    }
  }

  std::vector<eval::JurisdictionResults> Evaluate(
      std::optional<eval::Methodology> shown = std::nullopt) {
    SaveConfig("evaluate");
    std::vector<eval::JurisdictionResults> results;
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const std::string& name = d->jurisdiction();
      const corpus::SplitResult split = LoadSplit(*d);
      const featurize::FeatureSpace fs = LoadFeatures(name);
      const trees::ForestModel model = LoadModel(name, fs);
      const nlohmann::json stats = ReadJson(ws_.TrainStats(name), "train");

      std::vector<std::size_t> wanted(split.test1);
      wanted.insert(wanted.end(), split.test2.begin(), split.test2.end());
      const auto t0 = std::chrono::steady_clock::now();
      const auto docs = PreprocessIndices(*d, wanted, Resources());
      const double preprocess_s = SecondsSince(t0);

      const auto t1 = std::chrono::steady_clock::now();
      const auto predict = [&](std::span<const std::size_t> indices) {
        std::vector<eval::LabeledPrediction> preds;
        for (std::size_t i : indices) {
          const corpus::Judgment& j = d->judgments()[i];
          const featurize::CountVector v = featurize::Vectorize(docs.at(i), fs, j.id);
          const int c = trees::PredictForest(model, v);
          preds.push_back({j.id, j.primary_category, j.alt_categories,
                           model.categories[static_cast<std::size_t>(c)]});
        }
        return preds;
      };
      const auto test1 = predict(split.test1);
      const auto test2 = predict(split.test2);
      const double predict_s = SecondsSince(t1);

      const std::vector<std::string> labels = d->LabelSet();
      eval::JurisdictionResults row;
      row.jurisdiction = name;
      row.timings = {stats.at("preprocess_seconds").get<double>() + preprocess_s,
                     stats.at("train_seconds").get<double>(), predict_s};
      const auto run = [&](const std::vector<eval::LabeledPrediction>& p, eval::Methodology m) {
        eval::EvalReport r = eval::Evaluate(p, m, labels, name);
        r.timings = row.timings;
        return r;
      };
      row.test1_1to1 = run(test1, eval::Methodology::kOneToOne);
      row.test1_1to3 = run(test1, eval::Methodology::kOneToThree);
      row.test2_1to1 = run(test2, eval::Methodology::kOneToOne);
      row.test2_1to3 = run(test2, eval::Methodology::kOneToThree);
      WriteJson(ws_.Evaluation(name), {{"test1", {{"1to1", eval::ToJson(row.test1_1to1)},
                                                  {"1to3", eval::ToJson(row.test1_1to3)}}},
                                       {"test2", {{"1to1", eval::ToJson(row.test2_1to1)},
                                                  {"1to3", eval::ToJson(row.test2_1to3)}}}});
      for (auto m : {eval::Methodology::kOneToOne, eval::Methodology::kOneToThree}) {
        if (shown && *shown != m) continue;
        const bool one = m == eval::Methodology::kOneToOne;
        const eval::EvalReport& a = one ? row.test1_1to1 : row.test1_1to3;
        const eval::EvalReport& b = one ? row.test2_1to1 : row.test2_1to3;
        log_ << name << " " << eval::MethodologyName(m) << ": test1 accuracy " << a.accuracy
             << " f1 " << a.weighted_f1 << " recall " << a.weighted_recall << "; test2 accuracy "
             << b.accuracy << " f1 " << b.weighted_f1 << " recall " << b.weighted_recall << '\n';
      }
      results.push_back(std::move(row));
    }
    std::ostringstream table;
    eval::WriteReportTable(table, results);
    WriteFile(ws_.Report(), table.str());
    return results;
  }

  void BuildBags() {
    SaveConfig("build-bags");
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const std::string& name = d->jurisdiction();
      const corpus::SplitResult split = LoadSplit(*d);
      const featurize::FeatureSpace fs = LoadFeatures(name);
      const trees::ForestModel model = LoadModel(name, fs);
      std::vector<featurize::CountVector> reference;
      if (config_.bag_mode == explain::BagMode::kReference) {
        const auto docs = PreprocessIndices(*d, split.train, Resources());
        for (std::size_t i : split.train) {
          reference.push_back(featurize::Vectorize(docs.at(i), fs, d->judgments()[i].id));
        }
      }
      const std::vector<explain::CategoryBag> bags =
          explain::BuildBags(model, fs, reference, name, config_.bag_mode);
      WriteJson(ws_.Bags(name), explain::ToJson(bags, model.feature_fingerprint));
      for (const explain::CategoryBag& b : bags) {
        std::ostringstream tsv;
        explain::WriteBagTsv(tsv, b);
        WriteFile(ws_.BagTsv(name, b.category), tsv.str());
        log_ << name << " / " << b.category << ": " << b.terms.size() << " terms\n";
      }
    }
  }

  // Writes one sheet per bag, or only for category when given. Interactive
  // mode asks every question on out and records the replies read from in.
  void Questionnaire(const std::optional<std::string>& category = std::nullopt,
                     bool interactive = false, std::istream& in = std::cin,
                     std::ostream& out = std::cout) {
    SaveConfig("questionnaire");
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const std::string& name = d->jurisdiction();
      for (const explain::CategoryBag& b : LoadBags(name)) {
        if (category && b.category != *category) continue;
        explain::Questionnaire q = explain::MakeQuestionnaire(b, config_.questionnaire_size);
        if (interactive) explain::AnswerInteractively(q, in, out);
        std::ostringstream sheet;
        explain::WriteQuestionnaire(sheet, q);
        WriteFile(ws_.Sheet(name, b.category), sheet.str());
        log_ << ws_.Sheet(name, b.category).string() << ": " << q.rows.size() << " terms\n";
      }
    }
  }

  // Imports answered sheets. sheet overrides the default sheet location and
  // then requires category.
  void ImportDictionaries(const std::optional<std::string>& category = std::nullopt,
                          const std::optional<fs::path>& sheet = std::nullopt) {
    if (sheet && !category) throw Error("--sheet needs --category");
    SaveConfig("import-dict");
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const std::string& name = d->jurisdiction();
      std::ostringstream summary;
      summary << "category\tpresented\taccepted\tq1_yes_pct\tq2_yes_pct\taccepted_pct\n";
      bool matched = false;
      for (const explain::CategoryBag& b : LoadBags(name)) {
        if (category && b.category != *category) continue;
        matched = true;
        const fs::path path = sheet ? *sheet : ws_.Sheet(name, b.category);
        std::istringstream text(ReadFile(path, "questionnaire"));
        explain::Questionnaire q = explain::ReadQuestionnaire(text, path.string());
        if ((!q.category.empty() && q.category != b.category) ||
            (!q.jurisdiction.empty() && q.jurisdiction != name)) {
          throw Error(path.string() + " belongs to " + q.jurisdiction + " / " + q.category +
                      ", not " + name + " / " + b.category);
        }
        q.jurisdiction = name;
        q.category = b.category;
        std::vector<std::string> presented;
        for (const auto& row : explain::MakeQuestionnaire(b, config_.questionnaire_size).rows) {
          presented.push_back(row.term);
        }
        const explain::ExpertDictionary dict = explain::ImportDictionary(q, presented);
        std::ostringstream out;
        explain::WriteDictionary(out, dict);
        WriteFile(ws_.Dictionary(name, b.category), out.str());
        summary << b.category << '\t' << dict.audit.size() << '\t' << dict.accepted.size() << '\t'
                << eval::internal::Fixed(dict.q1_rate(), 2) << '\t'
                << eval::internal::Fixed(dict.q2_rate(), 2) << '\t'
                << eval::internal::Fixed(dict.acceptance_rate(), 2) << '\n';
        log_ << name << " / " << b.category << ": " << dict.accepted.size() << " of "
             << dict.audit.size() << " terms accepted\n";
      }
      if (category && !matched) {
        throw Error("jurisdiction '" + name + "' has no category '" + *category + "'");
      }
      if (!category) WriteFile(ws_.DictionarySummary(name), summary.str());
    }
  }

  // Explains the judgments of a split part ("train", "test1", "test2"), writing
  // the explanation artifacts of every selected jurisdiction.
  std::vector<explain::Explanation> ExplainSet(const std::string& part = "test1") {
    SaveConfig("explain");
    std::vector<explain::Explanation> all;
    for (const corpus::JurisdictionDataset* d : Selected()) {
      const std::string& name = d->jurisdiction();
      const corpus::SplitResult split = LoadSplit(*d);
      const std::vector<std::size_t>* indices = part == "train"   ? &split.train
                                                : part == "test1" ? &split.test1
                                                : part == "test2" ? &split.test2
                                                                  : nullptr;
      if (indices == nullptr) throw Error("unknown split part '" + part + "'");
      const Explainer ex = LoadExplainer(name);
      const auto docs = PreprocessIndices(*d, *indices, Resources());
      std::string jsonl, text;
      for (std::size_t i : *indices) {
        const corpus::Judgment& j = d->judgments()[i];
        explain::Explanation e = Explain(ex, j.id, docs.at(i));
        jsonl += explain::ToJson(e).dump() + "\n";
        text += explain::Render(e, explain::Language::kSpanish) + "\n" +
                explain::Render(e, explain::Language::kEnglish) + "\n\n";
        all.push_back(std::move(e));
      }
      WriteFile(ws_.Explanations(name), jsonl);
      WriteFile(ws_.ExplanationText(name), text);
      log_ << name << ": " << indices->size() << " explanations\n";
    }
    return all;
  }

  // Explains one corpus judgment.
  explain::Explanation ExplainId(const std::string& id) {
    SaveConfig("explain");
    for (const corpus::JurisdictionDataset* d : Selected()) {
      if (const corpus::Judgment* j = d->Find(id)) {
        const Explainer ex = LoadExplainer(d->jurisdiction());
        return Explain(ex, id, textprep::PreprocessedDocument(*j, Resources()));
      }
    }
    throw Error("unknown judgment '" + id + "'");
  }

  // Explains raw text under a jurisdiction's model. The jurisdiction may be
  // omitted when the corpus has only one.
  explain::Explanation ExplainText(const std::string& id, std::string_view text) {
    SaveConfig("explain");
    std::string name;
    if (config_.jurisdiction) {
      name = *config_.jurisdiction;
    } else {
      const auto selected = Selected();
      if (selected.size() != 1) throw Error("--jurisdiction is required with several jurisdictions");
      name = selected.front()->jurisdiction();
    }
    const Explainer ex = LoadExplainer(name);
    return Explain(ex, id, textprep::PreprocessText(text, Resources()));
  }

 private:
  struct Explainer {
    std::string jurisdiction;
    featurize::FeatureSpace fs;
    trees::ForestModel model;
    std::vector<explain::CategoryBag> bags;
    std::vector<explain::ExpertDictionary> dictionaries;
  };

  const std::vector<corpus::JurisdictionDataset>& Datasets() {
    if (!datasets_) {
      if (config_.corpus.empty()) throw Error("no corpus given (--corpus)");
      datasets_ = corpus::IngestCorpusFile(config_.corpus);
    }
    return *datasets_;
  }

  std::vector<const corpus::JurisdictionDataset*> Selected() {
    std::vector<const corpus::JurisdictionDataset*> out;
    for (const corpus::JurisdictionDataset& d : Datasets()) {
      if (!config_.jurisdiction || d.jurisdiction() == *config_.jurisdiction) out.push_back(&d);
    }
    if (out.empty()) {
      throw Error("corpus has no jurisdiction '" + config_.jurisdiction.value_or("") + "'");
    }
    return out;
  }

  const textprep::TextResources& Resources() {
    if (!resources_) {
      resources_ = textprep::LoadTextResources(config_.stop_words, config_.lemmas);
    }
    return *resources_;
  }

  void SaveConfig(std::string_view subcommand) {
    WriteJson(ws_.RunConfig(subcommand), ToJson(config_));
  }

  corpus::SplitResult LoadSplit(const corpus::JurisdictionDataset& d) {
    const nlohmann::json j = ReadJson(ws_.Split(d.jurisdiction()), "split");
    return corpus::SplitFromJson(j, d, j.at("seed").get<std::uint64_t>(),
                                 j.value("stratified", false));
  }

  featurize::FeatureSpace LoadFeatures(const std::string& jurisdiction) {
    const fs::path path = ws_.Features(jurisdiction);
    std::istringstream in(ReadFile(path, "train"));
    return featurize::ReadFeatureSpace(in, path.string());
  }

  trees::ForestModel LoadModel(const std::string& jurisdiction,
                               const featurize::FeatureSpace& features) {
    trees::ForestModel model = ModelFromJson(ReadJson(ws_.Model(jurisdiction), "train"));
    if (model.feature_fingerprint != features.Fingerprint() ||
        model.num_features != features.size()) {
      throw Error(ws_.Model(jurisdiction).string() + " was trained on a different feature space than " +
                  ws_.Features(jurisdiction).string());
    }
    return model;
  }

  std::vector<explain::CategoryBag> LoadBags(const std::string& jurisdiction) {
    const fs::path path = ws_.Bags(jurisdiction);
    return explain::BagsFromJson(ReadJson(path, "build-bags"));
  }

  Explainer LoadExplainer(const std::string& jurisdiction) {
    Explainer ex;
    ex.jurisdiction = jurisdiction;
    ex.fs = LoadFeatures(jurisdiction);
    ex.model = LoadModel(jurisdiction, ex.fs);
    ex.bags = LoadBags(jurisdiction);
    for (const explain::CategoryBag& b : ex.bags) {
      const fs::path path = ws_.Dictionary(jurisdiction, b.category);
      if (!fs::exists(path)) continue;
      std::istringstream in(ReadFile(path, "import-dict"));
      ex.dictionaries.push_back(explain::ReadDictionary(in, path.string()));
    }
    return ex;
  }

  explain::Explanation Explain(const Explainer& ex, const std::string& id,
                               const std::string& doc) const {
    const featurize::CountVector v = featurize::Vectorize(doc, ex.fs, id);
    explain::ExplainOptions options;
    options.m_max = config_.m_max;
    options.p_max = config_.p_max;
    options.dictionary_optional = config_.dictionary_optional;
    if (!options.dictionary_optional) {
      const std::string& category =
          ex.model.categories[static_cast<std::size_t>(trees::PredictForest(ex.model, v))];
      const bool found = std::any_of(ex.dictionaries.begin(), ex.dictionaries.end(),
                                     [&](const auto& d) { return d.category == category; });
      if (!found) throw MissingArtifact(ws_.Dictionary(ex.jurisdiction, category), "import-dict");
    }
    return explain::ExplainJudgment(ex.model, id, v, ex.bags, ex.dictionaries, ex.fs,
                                    ex.jurisdiction, options);
  }

  PipelineConfig config_;
  Workspace ws_;
  std::ostream& log_;
  std::optional<std::vector<corpus::JurisdictionDataset>> datasets_;
  std::optional<textprep::TextResources> resources_;
};

}  // namespace lexplain::pipeline

#endif  // LEXPLAIN_PIPELINE_PIPELINE_H_
