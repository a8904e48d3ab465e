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

#ifndef LEXPLAIN_EXPLAIN_PATH_H_
#define LEXPLAIN_EXPLAIN_PATH_H_

#include <cstdint>
#include <vector>

#include "lexplain/featurize/vectorize.h"
#include "lexplain/trees/tree.h"

namespace lexplain::explain {

enum class Branch : std::uint8_t { kLeft, kRight };

// Root-to-leaf route of one document through one tree. branches[i] is the
// branch taken out of nodes[i]; there is one fewer branch than nodes.
struct DecisionPath {
  int tree_id = 0;
  std::vector<int> nodes;
  std::vector<Branch> branches;
  int leaf_category = 0;

  int leaf() const { return nodes.back(); }
  bool operator==(const DecisionPath&) const = default;
};

inline DecisionPath TracePath(const trees::TreeModel& tree, const featurize::CountVector& v,
                              int tree_id = 0) {
  DecisionPath path;
  path.tree_id = tree_id;
  int node = 0;
  path.nodes.push_back(node);
  while (!tree.nodes[static_cast<std::size_t>(node)].is_leaf()) {
    const trees::TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    const bool right = v.Count(n.feature) > n.threshold;
    path.branches.push_back(right ? Branch::kRight : Branch::kLeft);
    node = right ? n.right : n.left;
    path.nodes.push_back(node);
  }
  path.leaf_category = tree.nodes[static_cast<std::size_t>(node)].majority();
  return path;
}

struct RelevantFeature {
  int feature = 0;
  std::int64_t frequency = 0;
  bool operator==(const RelevantFeature&) const = default;
};

// Features tested at nodes where the document took the ">" branch, in order of
// first appearance, each with the number of such nodes.
inline std::vector<RelevantFeature> RelevantFeatures(const DecisionPath& path,
                                                     const trees::TreeModel& tree) {
  std::vector<RelevantFeature> out;
  for (std::size_t i = 0; i < path.branches.size(); ++i) {
    if (path.branches[i] != Branch::kRight) continue;
    const int feature = tree.nodes[static_cast<std::size_t>(path.nodes[i])].feature;
    bool found = false;
    for (RelevantFeature& rf : out) {
      if (rf.feature == feature) {
        ++rf.frequency;
        found = true;
        break;
      }
    }
    if (!found) out.push_back({feature, 1});
  }
  return out;
}

}  // namespace lexplain::explain

#endif  // LEXPLAIN_EXPLAIN_PATH_H_
