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

#ifndef LEXPLAIN_EXPLAIN_BAGS_H_
#define LEXPLAIN_EXPLAIN_BAGS_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lexplain/error.h"
#include "lexplain/explain/path.h"
#include "lexplain/explain/reconstruct.h"
#include "lexplain/featurize/feature_space.h"
#include "lexplain/featurize/vectorize.h"
#include "lexplain/trees/forest.h"

namespace lexplain::explain {

// Reconstructed terms explaining decisions for one (jurisdiction, category).
struct CategoryBag {
  std::string jurisdiction;
  std::string category;
  std::vector<Term> terms;
  // Pool feature index -> term it expanded to.
  std::map<int, std::string> expansions;

  bool operator==(const CategoryBag&) const = default;
};

enum class BagMode {
  // Trace every reference document through every tree.
  kReference,
  // Enumerate every root-to-leaf path once, without documents.
  kStatic,
};

inline BagMode ParseBagMode(std::string_view name) {
  if (name == "reference") return BagMode::kReference;
  if (name == "static") return BagMode::kStatic;
  throw Error("unknown bag mode '" + std::string(name) + "'");
}

namespace internal {

using Pool = std::map<int, std::int64_t>;

inline void Accumulate(Pool& pool, std::span<const RelevantFeature> features) {
  for (const RelevantFeature& rf : features) pool[rf.feature] += rf.frequency;
}

inline std::vector<CategoryBag> FinishBags(const std::vector<Pool>& pools,
                                           const trees::ForestModel& forest,
                                           const FeatureSpace& fs,
                                           const std::string& jurisdiction) {
  std::vector<CategoryBag> bags;
  for (std::size_t c = 0; c < pools.size(); ++c) {
    std::vector<RelevantFeature> pool;
    for (const auto& [feature, f] : pools[c]) pool.push_back({feature, f});
    ReconstructedPool r = ReconstructPool(pool, fs);
    bags.push_back({jurisdiction, forest.categories[c], std::move(r.terms),
                    std::move(r.expansions)});
  }
  return bags;
}

// Relevant features of every root-to-leaf path of a tree, by leaf.
inline void StaticPaths(const trees::TreeModel& tree, int node, std::vector<int>& right_features,
                        std::vector<Pool>& pools) {
  const trees::TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
  if (n.is_leaf()) {
    std::vector<RelevantFeature> rfs;
    for (int f : right_features) {
      auto it = std::find_if(rfs.begin(), rfs.end(),
                             [&](const RelevantFeature& r) { return r.feature == f; });
      if (it == rfs.end()) {
        rfs.push_back({f, 1});
      } else {
        ++it->frequency;
      }
    }
    Accumulate(pools[static_cast<std::size_t>(n.majority())], rfs);
    return;
  }
  StaticPaths(tree, n.left, right_features, pools);
  right_features.push_back(n.feature);
  StaticPaths(tree, n.right, right_features, pools);
  right_features.pop_back();
}

}  // namespace internal

// One bag per forest category, in category order. In reference mode every
// document is traced through every tree and the relevant features of each
// path are credited to that path's leaf category.
inline std::vector<CategoryBag> BuildBags(const trees::ForestModel& forest,
                                          const FeatureSpace& fs,
                                          std::span<const featurize::CountVector> reference,
                                          const std::string& jurisdiction,
                                          BagMode mode = BagMode::kReference) {
  std::vector<internal::Pool> pools(forest.categories.size());
  if (mode == BagMode::kReference) {
    for (const featurize::CountVector& v : reference) {
      for (std::size_t t = 0; t < forest.trees.size(); ++t) {
        const DecisionPath path = TracePath(forest.trees[t], v, static_cast<int>(t));
        internal::Accumulate(pools[static_cast<std::size_t>(path.leaf_category)],
                             RelevantFeatures(path, forest.trees[t]));
      }
    }
  } else {
    for (const trees::TreeModel& tree : forest.trees) {
      std::vector<int> right_features;
      internal::StaticPaths(tree, 0, right_features, pools);
    }
  }
  return internal::FinishBags(pools, forest, fs, jurisdiction);
}

inline const CategoryBag* FindBag(std::span<const CategoryBag> bags, std::string_view category) {
  for (const CategoryBag& b : bags) {
    if (b.category == category) return &b;
  }
  return nullptr;
}

// "term<TAB>frequency" rows in bag order.
inline void WriteBagTsv(std::ostream& out, const CategoryBag& bag) {
  for (const Term& t : bag.terms) out << t.text << '\t' << t.frequency << '\n';
}

inline nlohmann::json ToJson(std::span<const CategoryBag> bags, const std::string& fingerprint) {
  nlohmann::json list = nlohmann::json::array();
  for (const CategoryBag& b : bags) {
    nlohmann::json terms = nlohmann::json::array();
    for (const Term& t : b.terms) terms.push_back({t.text, t.frequency});
    nlohmann::json expansions = nlohmann::json::array();
    for (const auto& [feature, term] : b.expansions) expansions.push_back({feature, term});
    list.push_back({{"jurisdiction", b.jurisdiction},
                    {"category", b.category},
                    {"terms", terms},
                    {"expansions", expansions}});
  }
  return {{"format", "lexplain-bags"},
          {"version", 1},
          {"feature_fingerprint", fingerprint},
          {"bags", list}};
}

inline std::vector<CategoryBag> BagsFromJson(const nlohmann::json& j) {
  if (j.value("format", "") != "lexplain-bags") throw Error("not a lexplain bag file");
  std::vector<CategoryBag> bags;
  for (const auto& b : j.at("bags")) {
    CategoryBag bag;
    bag.jurisdiction = b.at("jurisdiction").get<std::string>();
    bag.category = b.at("category").get<std::string>();
    for (const auto& t : b.at("terms")) {
      bag.terms.push_back({t.at(0).get<std::string>(), t.at(1).get<std::int64_t>()});
    }
    for (const auto& e : b.at("expansions")) {
      bag.expansions[e.at(0).get<int>()] = e.at(1).get<std::string>();
    }
    bags.push_back(std::move(bag));
  }
  return bags;
}

}  // namespace lexplain::explain

#endif  // LEXPLAIN_EXPLAIN_BAGS_H_
