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

#ifndef LEXPLAIN_TREES_HYPERPARAMS_H_
#define LEXPLAIN_TREES_HYPERPARAMS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "lexplain/error.h"
#include "lexplain/trees/impurity.h"

namespace lexplain::trees {

enum class MaxFeatures { kAll, kSqrt };
enum class Splitter { kBest, kRandom };

inline const char* MaxFeaturesName(MaxFeatures m) {
  return m == MaxFeatures::kAll ? "all" : "sqrt";
}

// "auto" is an alias of "all".
inline MaxFeatures ParseMaxFeatures(std::string_view name) {
  if (name == "all" || name == "auto") return MaxFeatures::kAll;
  if (name == "sqrt") return MaxFeatures::kSqrt;
  throw Error("unknown max_features '" + std::string(name) + "'");
}

inline const char* SplitterName(Splitter s) {
  return s == Splitter::kBest ? "best" : "random";
}

inline Splitter ParseSplitter(std::string_view name) {
  if (name == "best") return Splitter::kBest;
  if (name == "random") return Splitter::kRandom;
  throw Error("unknown splitter '" + std::string(name) + "'");
}

struct TreeHyperparams {
  Criterion criterion = Criterion::kGini;
  int max_depth = 8;
  MaxFeatures max_features = MaxFeatures::kAll;
  // Fractions of the training-set size.
  double min_samples_split = 0.001;
  double min_samples_leaf = 0.0005;
  Splitter splitter = Splitter::kBest;
  std::uint64_t seed = 0;

  void Validate() const {
    if (max_depth < 1) throw Error("max_depth must be at least 1");
    const auto fraction = [](double v, const char* name) {
      if (!(v > 0.0 && v <= 1.0)) {
        throw Error(std::string(name) + " must be a fraction in (0, 1]");
      }
    };
    fraction(min_samples_split, "min_samples_split");
    fraction(min_samples_leaf, "min_samples_leaf");
  }

  // Smallest node (in samples) that may be split.
  std::int64_t MinSplitCount(std::size_t n_train) const {
    return std::max<std::int64_t>(2, CeilCount(min_samples_split, n_train));
  }
  // Smallest allowed leaf.
  std::int64_t MinLeafCount(std::size_t n_train) const {
    return std::max<std::int64_t>(1, CeilCount(min_samples_leaf, n_train));
  }

  bool operator==(const TreeHyperparams&) const = default;

 private:
  static std::int64_t CeilCount(double fraction, std::size_t n) {
    return static_cast<std::int64_t>(
        std::ceil(fraction * static_cast<double>(n) - 1e-9));
  }
};

struct ForestParams {
  int n_estimators = 200;
  bool bootstrap = true;
  std::uint64_t seed = 0;

  void Validate() const {
    if (n_estimators < 1) throw Error("n_estimators must be at least 1");
  }
  bool operator==(const ForestParams&) const = default;
};

inline nlohmann::json ToJson(const TreeHyperparams& hp) {
  return {{"criterion", CriterionName(hp.criterion)},
          {"max_depth", hp.max_depth},
          {"max_features", MaxFeaturesName(hp.max_features)},
          {"min_samples_split", hp.min_samples_split},
          {"min_samples_leaf", hp.min_samples_leaf},
          {"splitter", SplitterName(hp.splitter)},
          {"seed", hp.seed}};
}

inline TreeHyperparams TreeHyperparamsFromJson(const nlohmann::json& j,
                                               TreeHyperparams hp = {}) {
  if (j.contains("criterion")) hp.criterion = ParseCriterion(j["criterion"].get<std::string>());
  if (j.contains("max_depth")) hp.max_depth = j["max_depth"].get<int>();
  if (j.contains("max_features")) {
    hp.max_features = ParseMaxFeatures(j["max_features"].get<std::string>());
  }
  if (j.contains("min_samples_split")) {
    hp.min_samples_split = j["min_samples_split"].get<double>();
  }
  if (j.contains("min_samples_leaf")) hp.min_samples_leaf = j["min_samples_leaf"].get<double>();
  if (j.contains("splitter")) hp.splitter = ParseSplitter(j["splitter"].get<std::string>());
  if (j.contains("seed")) hp.seed = j["seed"].get<std::uint64_t>();
  hp.Validate();
  return hp;
}

inline nlohmann::json ToJson(const ForestParams& fp) {
  return {{"n_estimators", fp.n_estimators},
          {"bootstrap", fp.bootstrap},
          {"seed", fp.seed}};
}

inline ForestParams ForestParamsFromJson(const nlohmann::json& j, ForestParams fp = {}) {
  if (j.contains("n_estimators")) fp.n_estimators = j["n_estimators"].get<int>();
  if (j.contains("bootstrap")) fp.bootstrap = j["bootstrap"].get<bool>();
  if (j.contains("seed")) fp.seed = j["seed"].get<std::uint64_t>();
  fp.Validate();
  return fp;
}

}  // namespace lexplain::trees

#endif  // LEXPLAIN_TREES_HYPERPARAMS_H_
