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

#ifndef LEXPLAIN_TREES_FOREST_H_
#define LEXPLAIN_TREES_FOREST_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "lexplain/random.h"
#include "lexplain/trees/hyperparams.h"
#include "lexplain/trees/training_data.h"
#include "lexplain/trees/tree.h"

namespace lexplain::trees {

struct ForestModel {
  std::vector<TreeModel> trees;
  TreeHyperparams hyperparams;
  ForestParams params;
  std::vector<std::string> categories;
  std::size_t num_features = 0;
  std::string feature_fingerprint;

  bool operator==(const ForestModel&) const = default;
};

struct ForestVote {
  int category = 0;
  // Winning category of each tree and the leaf it reached.
  std::vector<Prediction> per_tree;
};

// Per-tree seed: independent of thread scheduling and of n_estimators.
inline std::uint64_t TreeSeed(std::uint64_t forest_seed, std::size_t tree) {
  return DeriveSeed(forest_seed, tree);
}

// Multiplicity of each row in a bootstrap resample of size |rows|.
inline std::vector<std::int32_t> BootstrapWeights(std::size_t rows, std::uint64_t seed) {
  std::vector<std::int32_t> weights(rows, 0);
  Rng rng(DeriveSeed(seed, 0xB007));
  for (std::size_t i = 0; i < rows; ++i) ++weights[rng.Below(rows)];
  return weights;
}

// Trains params.n_estimators trees, concurrently when threads > 1. Results
// do not depend on the thread count.
inline ForestModel TrainForest(const TrainingData& data, const TreeHyperparams& hp,
                               const ForestParams& params, unsigned threads = 0) {
  hp.Validate();
  params.Validate();
  ForestModel forest;
  forest.hyperparams = hp;
  forest.params = params;
  forest.categories = data.categories();
  forest.num_features = data.num_features();
  forest.trees.resize(static_cast<std::size_t>(params.n_estimators));

  const auto train_one = [&](std::size_t t) {
    TreeHyperparams tree_hp = hp;
    tree_hp.seed = TreeSeed(params.seed, t);
    if (params.bootstrap) {
      const std::vector<std::int32_t> weights = BootstrapWeights(data.size(), tree_hp.seed);
      forest.trees[t] = TrainTree(data, tree_hp, weights);
    } else {
      forest.trees[t] = TrainTree(data, tree_hp);
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(params.n_estimators));
  if (threads <= 1) {
    for (std::size_t t = 0; t < forest.trees.size(); ++t) train_one(t);
    return forest;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t t; (t = next.fetch_add(1)) < forest.trees.size();) {
        try {
          train_one(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return forest;
}

// Majority vote. A tie goes to the tied category with the most training
// samples summed over the reached leaves, then to the lower index.
inline ForestVote VoteForest(const ForestModel& forest, const CountVector& v) {
  const std::size_t k = forest.categories.size();
  std::vector<int> votes(k, 0);
  std::vector<std::int64_t> mass(k, 0);
  ForestVote out;
  out.per_tree.reserve(forest.trees.size());
  for (const TreeModel& tree : forest.trees) {
    const Prediction p = tree.Predict(v);
    out.per_tree.push_back(p);
    ++votes[static_cast<std::size_t>(p.category)];
    const auto& counts = tree.nodes[static_cast<std::size_t>(p.leaf)].category_counts;
    for (std::size_t c = 0; c < k; ++c) mass[c] += counts[c];
  }
  int best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    const auto b = static_cast<std::size_t>(best);
    if (votes[c] > votes[b] || (votes[c] == votes[b] && mass[c] > mass[b])) {
      best = static_cast<int>(c);
    }
  }
  out.category = best;
  return out;
}

inline int PredictForest(const ForestModel& forest, const CountVector& v) {
  return VoteForest(forest, v).category;
}

}  // namespace lexplain::trees

#endif  // LEXPLAIN_TREES_FOREST_H_
