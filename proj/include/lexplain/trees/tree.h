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

#ifndef LEXPLAIN_TREES_TREE_H_
#define LEXPLAIN_TREES_TREE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexplain/error.h"
#include "lexplain/random.h"
#include "lexplain/trees/hyperparams.h"
#include "lexplain/trees/impurity.h"
#include "lexplain/trees/training_data.h"

namespace lexplain::trees {

inline constexpr int kNoFeature = -1;
inline constexpr int kNoChild = -1;

// Gains at or below this are treated as no improvement, and two gains closer
// than this are treated as equal.
inline constexpr double kGainEpsilon = 1e-12;

// Samples with count <= threshold go left, the others go right.
struct TreeNode {
  int feature = kNoFeature;
  double threshold = 0.0;
  int left = kNoChild;
  int right = kNoChild;
  int depth = 0;
  std::vector<std::int64_t> category_counts;

  bool is_leaf() const { return feature == kNoFeature; }
  std::int64_t total() const {
    return std::accumulate(category_counts.begin(), category_counts.end(),
                           std::int64_t{0});
  }
  // Majority category, ties to the lower index.
  int majority() const {
    return static_cast<int>(std::max_element(category_counts.begin(),
                                             category_counts.end()) -
                            category_counts.begin());
  }
  bool operator==(const TreeNode&) const = default;
};

struct Prediction {
  int category = 0;
  int leaf = 0;
};

// A trained tree stored as a flat node array, root at index 0, children
// after their parent in depth-first order.
struct TreeModel {
  std::vector<TreeNode> nodes;
  TreeHyperparams hyperparams;
  std::vector<std::string> categories;
  std::size_t num_features = 0;
  std::string feature_fingerprint;

  int Route(const CountVector& v) const {
    int node = 0;
    while (!nodes[node].is_leaf()) {
      const TreeNode& n = nodes[node];
      node = v.Count(n.feature) <= n.threshold ? n.left : n.right;
    }
    return node;
  }

  Prediction Predict(const CountVector& v) const {
    const int leaf = Route(v);
    return {nodes[leaf].majority(), leaf};
  }

  int depth() const {
    int d = 0;
    for (const TreeNode& n : nodes) d = std::max(d, n.depth);
    return d;
  }

  bool operator==(const TreeModel&) const = default;
};

struct Split {
  int feature = kNoFeature;
  double threshold = 0.0;
  double gain = 0.0;
};

namespace internal {

// Impurity decrease of a parent -> (left, right) partition, weighted by
// child sizes.
inline double SplitGain(double parent_impurity, std::span<const std::int64_t> left,
                        std::span<const std::int64_t> right, std::int64_t n_left,
                        std::int64_t n_right, Criterion criterion) {
  const double n = static_cast<double>(n_left + n_right);
  return parent_impurity -
         (static_cast<double>(n_left) * Impurity(left, criterion) +
          static_cast<double>(n_right) * Impurity(right, criterion)) /
             n;
}

class TreeBuilder {
 public:
  TreeBuilder(const TrainingData& data, const TreeHyperparams& hp,
              std::span<const std::int32_t> weights)
      : data_(data),
        hp_(hp),
        weights_(weights.begin(), weights.end()),
        rng_(hp.seed),
        k_(static_cast<std::size_t>(data.num_categories())),
        mark_(data.size(), -1),
        candidate_slot_(data.num_features(), -1) {
    std::int64_t n = 0;
    for (std::int32_t w : weights_) n += w;
    n_train_ = static_cast<std::size_t>(n);
    min_split_ = hp.MinSplitCount(n_train_);
    min_leaf_ = hp.MinLeafCount(n_train_);
    feature_pool_.resize(data.num_features());
    std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
  }

  void set_min_leaf(std::int64_t min_leaf) { min_leaf_ = std::max<std::int64_t>(1, min_leaf); }

  std::vector<TreeNode> Build() {
    std::vector<int> samples;
    for (std::size_t r = 0; r < data_.size(); ++r) {
      if (weights_[r] > 0) samples.push_back(static_cast<int>(r));
    }
    if (samples.empty()) throw Error("empty training set");
    Grow(samples, 0);
    return std::move(nodes_);
  }

  // Best split of the given samples over the given candidate features.
  std::optional<Split> FindSplit(std::span<const int> samples,
                                 std::span<const int> candidates,
                                 std::span<const std::int64_t> counts) {
    ++token_;
    for (int s : samples) mark_[static_cast<std::size_t>(s)] = token_;
    const std::int64_t n = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    const double parent = Impurity(counts, hp_.criterion);
    Gather(samples, candidates);

    std::optional<Split> best;
    std::vector<std::int64_t> left(k_), right(k_), nz(k_);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      auto items = std::span(items_).subspan(item_offsets_[c],
                                             item_offsets_[c + 1] - item_offsets_[c]);
      std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return a.count < b.count;
      });
      std::fill(nz.begin(), nz.end(), 0);
      std::int64_t nz_weight = 0;
      for (const Item& it : items) {
        nz[static_cast<std::size_t>(it.label)] += it.weight;
        nz_weight += it.weight;
      }
      // Distinct values in ascending order; the implicit zero group first.
      groups_.clear();
      if (nz_weight < n) groups_.push_back({0, 0, 0});
      for (std::size_t i = 0; i < items.size();) {
        std::size_t j = i;
        while (j < items.size() && items[j].count == items[i].count) ++j;
        groups_.push_back({items[i].count, i, j});
        i = j;
      }
      if (groups_.size() < 2) continue;

      const auto add_group = [&](const Group& g) {
        if (g.count == 0) {
          for (std::size_t l = 0; l < k_; ++l) left[l] += counts[l] - nz[l];
          return;
        }
        for (std::size_t i = g.begin; i < g.end; ++i) {
          left[static_cast<std::size_t>(items[i].label)] += items[i].weight;
        }
      };
      const auto consider = [&](double threshold) {
        std::int64_t n_left = 0;
        for (std::size_t l = 0; l < k_; ++l) {
          right[l] = counts[l] - left[l];
          n_left += left[l];
        }
        const std::int64_t n_right = n - n_left;
        if (n_left < min_leaf_ || n_right < min_leaf_) return;
        const double gain =
            SplitGain(parent, left, right, n_left, n_right, hp_.criterion);
        if (gain <= kGainEpsilon) return;
        if (best && gain <= best->gain + kGainEpsilon) return;
        best = Split{candidates[c], threshold, gain};
      };

      std::fill(left.begin(), left.end(), 0);
      if (hp_.splitter == Splitter::kBest) {
        for (std::size_t g = 0; g + 1 < groups_.size(); ++g) {
          add_group(groups_[g]);
          consider(0.5 * (static_cast<double>(groups_[g].count) +
                          static_cast<double>(groups_[g + 1].count)));
        }
      } else {
        const double lo = groups_.front().count;
        const double hi = groups_.back().count;
        const double threshold = rng_.Uniform(lo, hi);
        for (const Group& g : groups_) {
          if (g.count > threshold) break;
          add_group(g);
        }
        consider(threshold);
      }
    }
    return best;
  }

 private:
  struct Item {
    std::int32_t count;
    std::int32_t weight;
    std::int32_t label;
  };
  struct Group {
    std::int32_t count;
    std::size_t begin;
    std::size_t end;
  };

  // Collects the nonzero entries of every candidate feature over the marked
  // samples, by row or by column, whichever touches fewer entries.
  void Gather(std::span<const int> samples, std::span<const int> candidates) {
    std::size_t row_cost = 0;
    for (int s : samples) row_cost += data_.row(static_cast<std::size_t>(s)).nnz();
    std::size_t col_cost = 0;
    for (int f : candidates) col_cost += data_.column(static_cast<std::size_t>(f)).size();

    item_offsets_.assign(candidates.size() + 1, 0);
    if (row_cost < col_cost) {
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        candidate_slot_[static_cast<std::size_t>(candidates[c])] = static_cast<int>(c);
      }
      for (int s : samples) {
        for (const auto& e : data_.row(static_cast<std::size_t>(s)).entries) {
          const int slot = candidate_slot_[static_cast<std::size_t>(e.feature)];
          if (slot >= 0) ++item_offsets_[static_cast<std::size_t>(slot) + 1];
        }
      }
      std::partial_sum(item_offsets_.begin(), item_offsets_.end(), item_offsets_.begin());
      items_.resize(item_offsets_.back());
      fill_.assign(item_offsets_.begin(), item_offsets_.end() - 1);
      for (int s : samples) {
        const auto row = static_cast<std::size_t>(s);
        for (const auto& e : data_.row(row).entries) {
          const int slot = candidate_slot_[static_cast<std::size_t>(e.feature)];
          if (slot < 0) continue;
          items_[fill_[static_cast<std::size_t>(slot)]++] = {e.count, weights_[row],
                                                             data_.label(row)};
        }
      }
      for (int f : candidates) candidate_slot_[static_cast<std::size_t>(f)] = -1;
    } else {
      items_.clear();
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (const auto& e : data_.column(static_cast<std::size_t>(candidates[c]))) {
          const auto row = static_cast<std::size_t>(e.row);
          if (mark_[row] != token_) continue;
          items_.push_back({e.count, weights_[row], data_.label(row)});
        }
        item_offsets_[c + 1] = items_.size();
      }
    }
  }

  std::vector<int> Candidates() {
    const std::size_t f = data_.num_features();
    if (hp_.max_features == MaxFeatures::kAll) {
      std::vector<int> all(f);
      std::iota(all.begin(), all.end(), 0);
      return all;
    }
    const auto k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(f)))));
    rng_.SampleFront(std::span(feature_pool_), std::min(k, f));
    std::vector<int> chosen(feature_pool_.begin(),
                            feature_pool_.begin() + static_cast<std::ptrdiff_t>(std::min(k, f)));
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  int Grow(std::vector<int>& samples, int depth) {
    std::vector<std::int64_t> counts(k_, 0);
    for (int s : samples) {
      counts[static_cast<std::size_t>(data_.label(static_cast<std::size_t>(s)))] +=
          weights_[static_cast<std::size_t>(s)];
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(TreeNode{kNoFeature, 0.0, kNoChild, kNoChild, depth, counts});

    const std::int64_t n = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    const bool pure = std::count_if(counts.begin(), counts.end(),
                                    [](std::int64_t c) { return c > 0; }) <= 1;
    if (depth >= hp_.max_depth || pure || n < min_split_ || data_.num_features() == 0) {
      return id;
    }
    const std::vector<int> candidates = Candidates();
    const std::optional<Split> split = FindSplit(samples, candidates, counts);
    if (!split) return id;

    std::vector<int> left, right;
    for (int s : samples) {
      const double v = data_.row(static_cast<std::size_t>(s)).Count(split->feature);
      (v <= split->threshold ? left : right).push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();
    nodes_[id].feature = split->feature;
    nodes_[id].threshold = split->threshold;
    const int l = Grow(left, depth + 1);
    nodes_[id].left = l;
    const int r = Grow(right, depth + 1);
    nodes_[id].right = r;
    return id;
  }

  const TrainingData& data_;
  TreeHyperparams hp_;
  std::vector<std::int32_t> weights_;
  Rng rng_;
  std::size_t k_;
  std::size_t n_train_ = 0;
  std::int64_t min_split_ = 2;
  std::int64_t min_leaf_ = 1;
  std::vector<TreeNode> nodes_;
  std::vector<int> mark_;
  int token_ = 0;
  std::vector<int> candidate_slot_;
  std::vector<int> feature_pool_;
  std::vector<Item> items_;
  std::vector<std::size_t> item_offsets_;
  std::vector<std::size_t> fill_;
  std::vector<Group> groups_;
};

}  // namespace internal

// Grows a CART tree. Each node becomes a leaf at max_depth, when pure, when it
// holds fewer than min_samples_split * |train| samples, or when no split
// improves impurity while leaving min_samples_leaf * |train| samples on each
// side. weights gives each row's multiplicity (bootstrap); empty means 1 each.
inline TreeModel TrainTree(const TrainingData& data, const TreeHyperparams& hp,
                           std::span<const std::int32_t> weights = {}) {
  hp.Validate();
  std::vector<std::int32_t> ones;
  if (weights.empty()) {
    ones.assign(data.size(), 1);
    weights = ones;
  }
  if (weights.size() != data.size()) throw Error("one weight per training row required");
  TreeModel model;
  model.hyperparams = hp;
  model.num_features = data.num_features();
  model.categories = data.categories();
  model.nodes = internal::TreeBuilder(data, hp, weights).Build();
  return model;
}

// Highest-gain split of the samples over the candidate features, or nullopt
// when no split has positive gain with at least min_leaf samples per side.
inline std::optional<Split> BestSplit(const TrainingData& data,
                                      std::span<const int> candidates,
                                      Criterion criterion, std::int64_t min_leaf = 1) {
  if (data.size() < 2 || candidates.empty()) return std::nullopt;
  TreeHyperparams hp;
  hp.criterion = criterion;
  const std::vector<std::int32_t> weights(data.size(), 1);
  internal::TreeBuilder builder(data, hp, weights);
  std::vector<int> samples(data.size());
  std::iota(samples.begin(), samples.end(), 0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(data.num_categories()), 0);
  for (std::size_t r = 0; r < data.size(); ++r) ++counts[static_cast<std::size_t>(data.label(r))];
  std::vector<int> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  builder.set_min_leaf(min_leaf);
  return builder.FindSplit(samples, sorted, counts);
}

}  // namespace lexplain::trees

#endif  // LEXPLAIN_TREES_TREE_H_
