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

#ifndef LEXPLAIN_TREES_GRID_SEARCH_H_
#define LEXPLAIN_TREES_GRID_SEARCH_H_

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lexplain/error.h"
#include "lexplain/random.h"
#include "lexplain/trees/forest.h"
#include "lexplain/trees/hyperparams.h"
#include "lexplain/trees/training_data.h"
#include "lexplain/trees/tree.h"

namespace lexplain::trees {

enum class ModelKind { kTree, kForest };

inline ModelKind ParseModelKind(std::string_view name) {
  if (name == "tree" || name == "dt") return ModelKind::kTree;
  if (name == "forest" || name == "rf") return ModelKind::kForest;
  throw Error("unknown model kind '" + std::string(name) + "'");
}

inline const char* ModelKindName(ModelKind k) {
  return k == ModelKind::kTree ? "tree" : "forest";
}

struct GridAxis {
  std::string name;
  std::vector<nlohmann::json> values;
};

// Declarative hyperparameter grid: the Cartesian product of the axes, first
// axis varying slowest. Unlisted hyperparameters keep their base values.
struct Grid {
  ModelKind model = ModelKind::kTree;
  std::vector<GridAxis> axes;
  int folds = 5;
  TreeHyperparams base_tree;
  ForestParams base_forest;

  std::size_t size() const {
    std::size_t n = 1;
    for (const GridAxis& a : axes) n *= a.values.size();
    return n;
  }
};

struct Candidate {
  TreeHyperparams tree;
  ForestParams forest;
  nlohmann::json assignment = nlohmann::json::object();
};

inline void ApplyAxisValue(Candidate& c, const std::string& name, const nlohmann::json& v) {
  if (name == "criterion") {
    c.tree.criterion = ParseCriterion(v.get<std::string>());
  } else if (name == "max_depth") {
    c.tree.max_depth = v.get<int>();
  } else if (name == "max_features") {
    c.tree.max_features = ParseMaxFeatures(v.get<std::string>());
  } else if (name == "min_samples_leaf" || name == "min_samples") {
    c.tree.min_samples_leaf = v.get<double>();
  } else if (name == "min_samples_split") {
    c.tree.min_samples_split = v.get<double>();
  } else if (name == "splitter") {
    c.tree.splitter = ParseSplitter(v.get<std::string>());
  } else if (name == "n_estimators") {
    c.forest.n_estimators = v.get<int>();
  } else if (name == "bootstrap") {
    c.forest.bootstrap = v.get<bool>();
  } else {
    throw Error("unknown grid axis '" + name + "'");
  }
  c.assignment[name] = v;
}

// Combination number 'index' in grid order.
inline Candidate GridCandidate(const Grid& grid, std::size_t index) {
  Candidate c{grid.base_tree, grid.base_forest};
  std::size_t stride = grid.size();
  for (const GridAxis& axis : grid.axes) {
    stride /= axis.values.size();
    ApplyAxisValue(c, axis.name, axis.values[(index / stride) % axis.values.size()]);
  }
  c.tree.Validate();
  c.forest.Validate();
  return c;
}

inline Grid GridFromJson(const nlohmann::json& j) {
  Grid g;
  g.model = ParseModelKind(j.value("model", "tree"));
  g.folds = j.value("folds", 5);
  if (j.contains("base")) {
    g.base_tree = TreeHyperparamsFromJson(j["base"]);
    g.base_forest = ForestParamsFromJson(j["base"]);
  }
  for (const auto& a : j.at("axes")) {
    GridAxis axis{a.at("name").get<std::string>(), {}};
    for (const auto& v : a.at("values")) axis.values.push_back(v);
    if (axis.values.empty()) throw Error("grid axis '" + axis.name + "' has no values");
    g.axes.push_back(std::move(axis));
  }
  return g;
}

// Fold of each row: rows of every category are shuffled and dealt round-robin.
inline std::vector<int> StratifiedFolds(std::span<const int> labels, int num_categories,
                                        int folds, std::uint64_t seed) {
  if (folds < 2) throw Error("cross-validation needs at least 2 folds");
  std::vector<std::vector<int>> members(static_cast<std::size_t>(num_categories));
  for (std::size_t r = 0; r < labels.size(); ++r) {
    members[static_cast<std::size_t>(labels[r])].push_back(static_cast<int>(r));
  }
  Rng rng(DeriveSeed(seed, 0xF01D));
  std::vector<int> fold(labels.size(), 0);
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& m = members[c];
    if (m.empty()) continue;
    if (m.size() < static_cast<std::size_t>(folds)) {
      throw Error("category " + std::to_string(c) + " has " + std::to_string(m.size()) +
                  " samples, fewer than the " + std::to_string(folds) + " folds");
    }
    rng.Shuffle(std::span(m));
    for (std::size_t i = 0; i < m.size(); ++i) {
      fold[static_cast<std::size_t>(m[i])] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }
  }
  return fold;
}

struct GridRow {
  nlohmann::json assignment;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct GridSearchResult {
  std::size_t best = 0;
  Candidate best_candidate;
  std::vector<GridRow> rows;
};

// Exhaustive k-fold search over the grid. The highest mean accuracy wins;
// ties go to the earlier combination.
inline GridSearchResult GridSearch(const TrainingData& data, const Grid& grid,
                                   std::uint64_t seed, unsigned threads = 0) {
  if (grid.size() == 0) throw Error("empty hyperparameter grid");
  std::vector<int> labels(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) labels[r] = data.label(r);
  const std::vector<int> fold = StratifiedFolds(labels, data.num_categories(), grid.folds, seed);

  struct FoldData {
    std::vector<CountVector> train_rows;
    std::vector<int> train_labels;
    std::vector<std::size_t> held_out;
  };
  std::vector<FoldData> folds(static_cast<std::size_t>(grid.folds));
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (int f = 0; f < grid.folds; ++f) {
      FoldData& fd = folds[static_cast<std::size_t>(f)];
      if (fold[r] == f) {
        fd.held_out.push_back(r);
      } else {
        fd.train_rows.push_back(data.row(r));
        fd.train_labels.push_back(data.label(r));
      }
    }
  }

  GridSearchResult result;
  double best_mean = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Candidate c = GridCandidate(grid, i);
    c.tree.seed = seed;
    c.forest.seed = seed;
    GridRow row{c.assignment, {}, 0.0};
    for (const FoldData& fd : folds) {
      const TrainingData train(fd.train_rows, fd.train_labels, data.categories(),
                               data.num_features());
      std::size_t correct = 0;
      if (grid.model == ModelKind::kTree) {
        const TreeModel model = TrainTree(train, c.tree);
        for (std::size_t r : fd.held_out) {
          correct += model.Predict(data.row(r)).category == data.label(r);
        }
      } else {
        const ForestModel model = TrainForest(train, c.tree, c.forest, threads);
        for (std::size_t r : fd.held_out) {
          correct += PredictForest(model, data.row(r)) == data.label(r);
        }
      }
      row.fold_accuracy.push_back(static_cast<double>(correct) /
                                  static_cast<double>(fd.held_out.size()));
    }
    double sum = 0.0;
    for (double a : row.fold_accuracy) sum += a;
    row.mean_accuracy = sum / static_cast<double>(row.fold_accuracy.size());
    if (row.mean_accuracy > best_mean) {
      best_mean = row.mean_accuracy;
      result.best = i;
      result.best_candidate = c;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

inline nlohmann::json ToJson(const GridSearchResult& r, ModelKind model) {
  nlohmann::json rows = nlohmann::json::array();
  for (const GridRow& row : r.rows) {
    rows.push_back({{"params", row.assignment},
                    {"fold_accuracy", row.fold_accuracy},
                    {"mean_accuracy", row.mean_accuracy}});
  }
  return {{"model", ModelKindName(model)},
          {"best_index", r.best},
          {"best", {{"hyperparams", ToJson(r.best_candidate.tree)},
                    {"forest", ToJson(r.best_candidate.forest)}}},
          {"combinations", rows}};
}

}  // namespace lexplain::trees

#endif  // LEXPLAIN_TREES_GRID_SEARCH_H_
