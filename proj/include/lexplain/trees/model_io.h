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

#ifndef LEXPLAIN_TREES_MODEL_IO_H_
#define LEXPLAIN_TREES_MODEL_IO_H_

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lexplain/error.h"
#include "lexplain/trees/forest.h"
#include "lexplain/trees/hyperparams.h"
#include "lexplain/trees/tree.h"

namespace lexplain::trees {

inline constexpr int kModelFormatVersion = 1;

namespace internal {

// Node arrays are stored column-wise: one array per node attribute.
inline nlohmann::json NodesToJson(const std::vector<TreeNode>& nodes) {
  nlohmann::json feature = nlohmann::json::array(), threshold = nlohmann::json::array(),
                 left = nlohmann::json::array(), right = nlohmann::json::array(),
                 depth = nlohmann::json::array(), counts = nlohmann::json::array();
  for (const TreeNode& n : nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    depth.push_back(n.depth);
    counts.push_back(n.category_counts);
  }
  return {{"feature", feature}, {"threshold", threshold}, {"left", left},
          {"right", right},     {"depth", depth},         {"counts", counts}};
}

inline std::vector<TreeNode> NodesFromJson(const nlohmann::json& j, std::size_t k) {
  const auto& feature = j.at("feature");
  const std::size_t n = feature.size();
  for (const char* key : {"threshold", "left", "right", "depth", "counts"}) {
    if (j.at(key).size() != n) throw Error(std::string("node array '") + key + "' has wrong length");
  }
  std::vector<TreeNode> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    TreeNode& node = nodes[i];
    node.feature = feature[i].get<int>();
    node.threshold = j["threshold"][i].get<double>();
    node.left = j["left"][i].get<int>();
    node.right = j["right"][i].get<int>();
    node.depth = j["depth"][i].get<int>();
    node.category_counts = j["counts"][i].get<std::vector<std::int64_t>>();
    if (node.category_counts.size() != k) throw Error("node category counts have wrong length");
  }
  return nodes;
}

// Checks that the array encodes one rooted binary tree reaching every node once.
inline void ValidateNodes(const std::vector<TreeNode>& nodes, std::size_t num_features) {
  if (nodes.empty()) throw Error("tree without nodes");
  std::vector<bool> seen(nodes.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const TreeNode& n = nodes[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    ++reached;
    if (n.is_leaf()) {
      if (n.left != kNoChild || n.right != kNoChild) throw Error("leaf with children");
      continue;
    }
    if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= num_features) {
      throw Error("node feature outside the feature space");
    }
    for (int child : {n.left, n.right}) {
      if (child <= 0 || static_cast<std::size_t>(child) >= nodes.size() ||
          seen[static_cast<std::size_t>(child)]) {
        throw Error("node array is not a tree");
      }
      seen[static_cast<std::size_t>(child)] = true;
      stack.push_back(child);
    }
  }
  if (reached != nodes.size()) throw Error("node array has unreachable nodes");
}

}  // namespace internal

inline nlohmann::json ToJson(const TreeModel& t) {
  return {{"format", "lexplain-model"},
          {"version", kModelFormatVersion},
          {"kind", "tree"},
          {"hyperparams", ToJson(t.hyperparams)},
          {"categories", t.categories},
          {"feature_space", {{"fingerprint", t.feature_fingerprint}, {"size", t.num_features}}},
          {"nodes", internal::NodesToJson(t.nodes)}};
}

inline nlohmann::json ToJson(const ForestModel& f) {
  nlohmann::json trees = nlohmann::json::array();
  for (const TreeModel& t : f.trees) {
    trees.push_back({{"seed", t.hyperparams.seed}, {"nodes", internal::NodesToJson(t.nodes)}});
  }
  return {{"format", "lexplain-model"},
          {"version", kModelFormatVersion},
          {"kind", "forest"},
          {"hyperparams", ToJson(f.hyperparams)},
          {"forest", ToJson(f.params)},
          {"categories", f.categories},
          {"feature_space", {{"fingerprint", f.feature_fingerprint}, {"size", f.num_features}}},
          {"trees", trees}};
}

namespace internal {
inline void CheckHeader(const nlohmann::json& j, const char* kind) {
  if (j.value("format", "") != "lexplain-model") throw Error("not a lexplain model file");
  if (j.value("version", 0) != kModelFormatVersion) {
    throw Error("unsupported model format version " + std::to_string(j.value("version", 0)));
  }
  if (j.value("kind", "") != kind) {
    throw Error(std::string("expected a ") + kind + " model, found " + j.value("kind", "?"));
  }
}
}  // namespace internal

inline TreeModel TreeFromJson(const nlohmann::json& j) {
  internal::CheckHeader(j, "tree");
  TreeModel t;
  t.hyperparams = TreeHyperparamsFromJson(j.at("hyperparams"));
  t.categories = j.at("categories").get<std::vector<std::string>>();
  t.feature_fingerprint = j.at("feature_space").at("fingerprint").get<std::string>();
  t.num_features = j.at("feature_space").at("size").get<std::size_t>();
  t.nodes = internal::NodesFromJson(j.at("nodes"), t.categories.size());
  internal::ValidateNodes(t.nodes, t.num_features);
  return t;
}

inline ForestModel ForestFromJson(const nlohmann::json& j) {
  internal::CheckHeader(j, "forest");
  ForestModel f;
  f.hyperparams = TreeHyperparamsFromJson(j.at("hyperparams"));
  f.params = ForestParamsFromJson(j.at("forest"));
  f.categories = j.at("categories").get<std::vector<std::string>>();
  f.feature_fingerprint = j.at("feature_space").at("fingerprint").get<std::string>();
  f.num_features = j.at("feature_space").at("size").get<std::size_t>();
  for (const auto& tj : j.at("trees")) {
    TreeModel t;
    t.hyperparams = f.hyperparams;
    t.hyperparams.seed = tj.at("seed").get<std::uint64_t>();
    t.categories = f.categories;
    t.num_features = f.num_features;
    t.feature_fingerprint = f.feature_fingerprint;
    t.nodes = internal::NodesFromJson(tj.at("nodes"), f.categories.size());
    internal::ValidateNodes(t.nodes, t.num_features);
    f.trees.push_back(std::move(t));
  }
  if (f.trees.size() != static_cast<std::size_t>(f.params.n_estimators)) {
    throw Error("forest holds " + std::to_string(f.trees.size()) + " trees but n_estimators is " +
                std::to_string(f.params.n_estimators));
  }
  return f;
}

// A single tree is stored as a one-tree forest without bootstrap, so the
// rest of the pipeline handles one model kind.
inline ForestModel AsForest(TreeModel tree) {
  ForestModel f;
  f.hyperparams = tree.hyperparams;
  f.params = {1, false, tree.hyperparams.seed};
  f.categories = tree.categories;
  f.num_features = tree.num_features;
  f.feature_fingerprint = tree.feature_fingerprint;
  f.trees.push_back(std::move(tree));
  return f;
}

}  // namespace lexplain::trees

#endif  // LEXPLAIN_TREES_MODEL_IO_H_
