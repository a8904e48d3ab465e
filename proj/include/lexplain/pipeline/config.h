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

#ifndef LEXPLAIN_PIPELINE_CONFIG_H_
#define LEXPLAIN_PIPELINE_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "lexplain/error.h"
#include "lexplain/explain/bags.h"
#include "lexplain/featurize/feature_space.h"
#include "lexplain/trees/grid_search.h"
#include "lexplain/trees/hyperparams.h"

namespace lexplain::pipeline {

// Everything that determines a run. Each subcommand writes the resolved
// configuration next to its outputs.
struct PipelineConfig {
  std::string corpus;
  std::string stop_words;
  std::string lemmas;
  std::string out = "lexplain-out";
  // Restricts the run to one jurisdiction when set.
  std::optional<std::string> jurisdiction;

  std::optional<std::uint64_t> seed;
  bool stratified = false;

  featurize::FitOptions features;
  double chi2_percentile = 20.0;

  trees::ModelKind model = trees::ModelKind::kForest;
  trees::TreeHyperparams tree;
  trees::ForestParams forest;
  // Grid file for tune; empty means no tuning.
  std::string grid;
  // Take hyperparameters from the tune result instead of tree/forest.
  bool use_tuned = false;
  unsigned threads = 0;

  explain::BagMode bag_mode = explain::BagMode::kReference;
  std::size_t questionnaire_size = 50;
  std::size_t m_max = 16;
  std::size_t p_max = 10;
  // Explain without expert dictionaries; every term is an "other" term.
  bool dictionary_optional = false;

  std::uint64_t RequireSeed() const {
    if (!seed) throw Error("--seed is required");
    return *seed;
  }
};

inline nlohmann::json ToJson(const PipelineConfig& c) {
  nlohmann::json j = {
      {"corpus", c.corpus},
      {"stop_words", c.stop_words},
      {"lemmas", c.lemmas},
      {"out", c.out},
      {"jurisdiction", c.jurisdiction ? nlohmann::json(*c.jurisdiction) : nlohmann::json()},
      {"seed", c.seed ? nlohmann::json(*c.seed) : nlohmann::json()},
      {"stratified", c.stratified},
      {"char_min", c.features.ngrams.char_min},
      {"char_max", c.features.ngrams.char_max},
      {"word_max", c.features.ngrams.word_max},
      {"min_df", c.features.min_df},
      {"max_df", c.features.max_df},
      {"chi2_percentile", c.chi2_percentile},
      {"model", trees::ModelKindName(c.model)},
      {"hyperparams", trees::ToJson(c.tree)},
      {"forest", trees::ToJson(c.forest)},
      {"grid", c.grid},
      {"use_tuned", c.use_tuned},
      {"threads", c.threads},
      {"bag_mode", c.bag_mode == explain::BagMode::kReference ? "reference" : "static"},
      {"questionnaire_size", c.questionnaire_size},
      {"m_max", c.m_max},
      {"p_max", c.p_max},
      {"dictionary_optional", c.dictionary_optional},
  };
  return j;
}

// Missing keys keep their defaults.
inline PipelineConfig ConfigFromJson(const nlohmann::json& j) {
  PipelineConfig c;
  const auto str = [&](const char* key, std::string& field) {
    if (j.contains(key) && j[key].is_string()) field = j[key].get<std::string>();
  };
  str("corpus", c.corpus);
  str("stop_words", c.stop_words);
  str("lemmas", c.lemmas);
  str("out", c.out);
  str("grid", c.grid);
  if (j.contains("jurisdiction") && j["jurisdiction"].is_string()) {
    c.jurisdiction = j["jurisdiction"].get<std::string>();
  }
  if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
  c.stratified = j.value("stratified", c.stratified);
  c.features.ngrams.char_min = j.value("char_min", c.features.ngrams.char_min);
  c.features.ngrams.char_max = j.value("char_max", c.features.ngrams.char_max);
  c.features.ngrams.word_max = j.value("word_max", c.features.ngrams.word_max);
  c.features.min_df = j.value("min_df", c.features.min_df);
  c.features.max_df = j.value("max_df", c.features.max_df);
  c.chi2_percentile = j.value("chi2_percentile", c.chi2_percentile);
  if (j.contains("model")) c.model = trees::ParseModelKind(j["model"].get<std::string>());
  if (j.contains("hyperparams")) c.tree = trees::TreeHyperparamsFromJson(j["hyperparams"]);
  if (j.contains("forest")) c.forest = trees::ForestParamsFromJson(j["forest"]);
  c.use_tuned = j.value("use_tuned", c.use_tuned);
  c.threads = j.value("threads", c.threads);
  if (j.contains("bag_mode")) c.bag_mode = explain::ParseBagMode(j["bag_mode"].get<std::string>());
  c.questionnaire_size = j.value("questionnaire_size", c.questionnaire_size);
  c.m_max = j.value("m_max", c.m_max);
  c.p_max = j.value("p_max", c.p_max);
  c.dictionary_optional = j.value("dictionary_optional", c.dictionary_optional);
  return c;
}

}  // namespace lexplain::pipeline

#endif  // LEXPLAIN_PIPELINE_CONFIG_H_
