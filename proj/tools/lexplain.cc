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

// lexplain: command-line driver for the classification and explanation
// pipeline. Run "lexplain --help" for the subcommands.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "lexplain/lexplain.h"

namespace {

using lexplain::pipeline::PipelineConfig;

std::string DefaultOut() {
  const char* env = std::getenv("LEXPLAIN_OUT");
  return env != nullptr && *env != '\0' ? env : "lexplain-out";
}

std::string ReadWholeFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lexplain::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Collects flag values and applies only the flags given on the command line
// on top of an optional --config file.
class ConfigFlags {
 public:
  explicit ConfigFlags(CLI::App& app) : app_(app) {
    app.add_option("--config", config_file_, "Resolved configuration (JSON) to start from");
    Str("--corpus", &PipelineConfig::corpus, "Corpus file (JSON lines)");
    Str("--stop-words", &PipelineConfig::stop_words, "Stop-word list");
    Str("--lemmas", &PipelineConfig::lemmas, "Lemma map (word<TAB>lemma)");
    Str("--out", &PipelineConfig::out, "Output directory (default $LEXPLAIN_OUT or lexplain-out)");
    Add<std::string>("--jurisdiction", "Only process this jurisdiction",
                     [](PipelineConfig& c, const std::string& v) { c.jurisdiction = v; });
    Add<std::uint64_t>("--seed", "Random seed (required by split, train and tune)",
                       [](PipelineConfig& c, std::uint64_t v) { c.seed = v; });
    Flag("--stratified", "Stratify the 80/20 split by category",
         [](PipelineConfig& c) { c.stratified = true; });
    Add<int>("--char-min", "Shortest char-gram",
             [](PipelineConfig& c, int v) { c.features.ngrams.char_min = v; });
    Add<int>("--char-max", "Longest char-gram",
             [](PipelineConfig& c, int v) { c.features.ngrams.char_max = v; });
    Add<int>("--word-max", "Longest word-gram",
             [](PipelineConfig& c, int v) { c.features.ngrams.word_max = v; });
    Add<double>("--min-df", "Minimum document frequency (fraction)",
                [](PipelineConfig& c, double v) { c.features.min_df = v; });
    Add<double>("--max-df", "Maximum document frequency (fraction)",
                [](PipelineConfig& c, double v) { c.features.max_df = v; });
    Add<double>("--percentile", "Chi-squared percentile of features kept",
                [](PipelineConfig& c, double v) { c.chi2_percentile = v; });
    Add<std::string>("--model", "tree or forest", [](PipelineConfig& c, const std::string& v) {
      c.model = lexplain::trees::ParseModelKind(v);
    });
    Add<std::string>("--criterion", "gini or entropy", [](PipelineConfig& c, const std::string& v) {
      c.tree.criterion = lexplain::trees::ParseCriterion(v);
    });
    Add<int>("--max-depth", "Maximum tree depth",
             [](PipelineConfig& c, int v) { c.tree.max_depth = v; });
    Add<std::string>("--max-features", "all (alias auto) or sqrt",
                     [](PipelineConfig& c, const std::string& v) {
                       c.tree.max_features = lexplain::trees::ParseMaxFeatures(v);
                     });
    Add<double>("--min-samples-split", "Fraction of the train set",
                [](PipelineConfig& c, double v) { c.tree.min_samples_split = v; });
    Add<double>("--min-samples-leaf", "Fraction of the train set",
                [](PipelineConfig& c, double v) { c.tree.min_samples_leaf = v; });
    Add<std::string>("--splitter", "best or random", [](PipelineConfig& c, const std::string& v) {
      c.tree.splitter = lexplain::trees::ParseSplitter(v);
    });
    Add<int>("--n-estimators", "Trees per forest",
             [](PipelineConfig& c, int v) { c.forest.n_estimators = v; });
    Flag("--no-bootstrap", "Train every forest tree on the full train set",
         [](PipelineConfig& c) { c.forest.bootstrap = false; });
    Str("--grid", &PipelineConfig::grid, "Hyperparameter grid (JSON) for tune");
    Flag("--use-tuned", "Train with the hyperparameters chosen by tune",
         [](PipelineConfig& c) { c.use_tuned = true; });
    Add<unsigned>("--threads", "Worker threads (0: one per core)",
                  [](PipelineConfig& c, unsigned v) { c.threads = v; });
    Add<std::string>("--bag-mode", "reference or static",
                     [](PipelineConfig& c, const std::string& v) {
                       c.bag_mode = lexplain::explain::ParseBagMode(v);
                     });
    Add<std::size_t>("--questionnaire-size", "Terms per questionnaire",
                     [](PipelineConfig& c, std::size_t v) { c.questionnaire_size = v; });
    Add<std::size_t>("--m-max", "Most dictionary terms per explanation",
                     [](PipelineConfig& c, std::size_t v) { c.m_max = v; });
    Add<std::size_t>("--p-max", "Most other terms per explanation",
                     [](PipelineConfig& c, std::size_t v) { c.p_max = v; });
    Flag("--no-dictionary", "Explain without expert dictionaries",
         [](PipelineConfig& c) { c.dictionary_optional = true; });
  }

  PipelineConfig Resolve() const {
    PipelineConfig c;
    c.out = DefaultOut();
    if (!config_file_.empty()) {
      c = lexplain::pipeline::ConfigFromJson(nlohmann::json::parse(ReadWholeFile(config_file_)));
    }
    for (const auto& [option, apply] : appliers_) {
      if (option->count() > 0) apply(c);
    }
    return c;
  }

 private:
  template <typename T>
  void Add(const std::string& name, const std::string& help,
           std::function<void(PipelineConfig&, const T&)> set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_.add_option(name, *value, help);
    appliers_.emplace_back(opt, [value, set](PipelineConfig& c) { set(c, *value); });
  }
  void Str(const std::string& name, std::string PipelineConfig::*field, const std::string& help) {
    Add<std::string>(name, help, [field](PipelineConfig& c, const std::string& v) { c.*field = v; });
  }
  void Flag(const std::string& name, const std::string& help,
            std::function<void(PipelineConfig&)> set) {
    CLI::Option* opt = app_.add_flag(name, help);
    appliers_.emplace_back(opt, [set](PipelineConfig& c) { set(c); });
  }

  CLI::App& app_;
  std::string config_file_;
  std::vector<std::pair<CLI::Option*, std::function<void(PipelineConfig&)>>> appliers_;
};

void PrintExplanation(const lexplain::explain::Explanation& e, const std::string& lang) {
  using lexplain::explain::Language;
  if (lang == "es" || lang == "both") std::cout << Render(e, Language::kSpanish) << '\n';
  if (lang == "en" || lang == "both") std::cout << Render(e, Language::kEnglish) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explainable legal text classification with tree ensembles"};
  app.require_subcommand(1);
  app.fallthrough();
  ConfigFlags flags(app);

  auto* ingest = app.add_subcommand("ingest", "Validate the corpus and count judgments");
  auto* split = app.add_subcommand("split", "Downsample and split every jurisdiction");
  auto* train = app.add_subcommand("train", "Fit features and train the classifier");
  auto* tune = app.add_subcommand("tune", "Cross-validated grid search over hyperparameters");

  auto* evaluate = app.add_subcommand("evaluate", "Score the model on both test sets");
  std::string methodology;
  evaluate->add_option("--methodology", methodology, "1to1 or 1to3 (default: both)")
      ->check(CLI::IsMember({"1to1", "1to3"}));

  auto* bags = app.add_subcommand("build-bags", "Collect relevant terms per category");

  auto* questionnaire = app.add_subcommand("questionnaire", "Write expert questionnaires");
  std::string q_category;
  bool interactive = false;
  questionnaire->add_option("--category", q_category, "Only this category");
  questionnaire->add_flag("--interactive", interactive, "Answer the questions in the terminal");

  auto* import = app.add_subcommand("import-dict", "Import answered questionnaires");
  std::string i_category, sheet;
  import->add_option("--category", i_category, "Only this category");
  import->add_option("--sheet", sheet, "Answered sheet to import (needs --category)");

  auto* explain = app.add_subcommand("explain", "Explain classifications");
  std::string id, text_file, part = "test1", lang = "both";
  auto* id_opt = explain->add_option("--id", id, "Corpus judgment id");
  auto* text_opt = explain->add_option("--text", text_file, "Raw judgment text file");
  explain->add_option("--set", part, "Split part to explain in bulk")
      ->check(CLI::IsMember({"train", "test1", "test2"}));
  explain->add_option("--lang", lang, "es, en or both")->check(CLI::IsMember({"es", "en", "both"}));
  id_opt->excludes(text_opt);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic planted-keyword corpus");
  std::string synth_out;
  std::size_t per_category = 200;
  std::uint64_t synth_seed = 0;
  synth->add_option("--output", synth_out, "Corpus file to write")->required();
  synth->add_option("--docs-per-category", per_category, "Judgments per category");
  synth->add_option("--synth-seed", synth_seed, "Generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    const PipelineConfig config = flags.Resolve();
    if (synth->parsed()) {
      lexplain::pipeline::SyntheticOptions options;
      options.seed = synth_seed;
      options.docs_per_category = per_category;
      std::ostringstream out;
      lexplain::corpus::WriteCorpus(out, lexplain::pipeline::GenerateSyntheticCorpus(options));
      lexplain::pipeline::WriteFile(synth_out, out.str());
      return 0;
    }
    lexplain::pipeline::Runner runner(config, std::cerr);
    if (ingest->parsed()) runner.Ingest();
    if (split->parsed()) runner.Split();
    if (train->parsed()) runner.Train();
    if (tune->parsed()) runner.Tune();
    if (evaluate->parsed()) {
      std::optional<lexplain::eval::Methodology> shown;
      if (!methodology.empty()) shown = lexplain::eval::ParseMethodology(methodology);
      runner.Evaluate(shown);
    }
    if (bags->parsed()) runner.BuildBags();
    if (questionnaire->parsed()) {
      std::optional<std::string> category;
      if (!q_category.empty()) category = q_category;
      runner.Questionnaire(category, interactive, std::cin, std::cout);
    }
    if (import->parsed()) {
      std::optional<std::string> category;
      std::optional<std::filesystem::path> sheet_path;
      if (!i_category.empty()) category = i_category;
      if (!sheet.empty()) sheet_path = sheet;
      runner.ImportDictionaries(category, sheet_path);
    }
    if (explain->parsed()) {
      if (!id.empty()) {
        PrintExplanation(runner.ExplainId(id), lang);
      } else if (!text_file.empty()) {
        const std::string stem = std::filesystem::path(text_file).stem().string();
        PrintExplanation(runner.ExplainText(stem, ReadWholeFile(text_file)), lang);
      } else {
        runner.ExplainSet(part);
      }
    }
  } catch (const lexplain::Error& e) {
    std::cerr << "lexplain: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "lexplain: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "lexplain: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
