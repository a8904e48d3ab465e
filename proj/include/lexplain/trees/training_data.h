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

#ifndef LEXPLAIN_TREES_TRAINING_DATA_H_
#define LEXPLAIN_TREES_TRAINING_DATA_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexplain/error.h"
#include "lexplain/featurize/vectorize.h"

namespace lexplain::trees {

using featurize::CountVector;

// Labeled count vectors plus a per-feature column index, built once and shared
// by every tree trained on the same rows.
class TrainingData {
 public:
  struct ColumnEntry {
    std::int32_t row;
    std::int32_t count;
  };

  // rows must outlive this object. labels index into categories.
  TrainingData(std::span<const CountVector> rows, std::span<const int> labels,
               std::vector<std::string> categories, std::size_t num_features)
      : rows_(rows),
        labels_(labels.begin(), labels.end()),
        categories_(std::move(categories)),
        num_categories_(static_cast<int>(categories_.size())),
        num_features_(num_features) {
    if (rows.size() != labels.size()) {
      throw Error("training data: " + std::to_string(rows.size()) +
                  " rows but " + std::to_string(labels.size()) + " labels");
    }
    if (rows.empty()) throw Error("empty training set");
    if (num_categories_ < 1) throw Error("training data needs at least one category");
    std::vector<std::size_t> lengths(num_features, 0);
    for (const CountVector& v : rows) {
      for (const auto& e : v.entries) {
        if (e.feature < 0 || static_cast<std::size_t>(e.feature) >= num_features) {
          throw Error("count vector index " + std::to_string(e.feature) +
                      " outside the feature space");
        }
        if (e.count <= 0) throw Error("count vectors must hold positive counts");
        ++lengths[static_cast<std::size_t>(e.feature)];
      }
    }
    for (int l : labels_) {
      if (l < 0 || l >= num_categories_) throw Error("label outside the category list");
    }
    offsets_.assign(num_features + 1, 0);
    for (std::size_t f = 0; f < num_features; ++f) offsets_[f + 1] = offsets_[f] + lengths[f];
    entries_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& e : rows[r].entries) {
        entries_[fill[static_cast<std::size_t>(e.feature)]++] = {
            static_cast<std::int32_t>(r), e.count};
      }
    }
  }

  std::size_t size() const { return rows_.size(); }
  std::size_t num_features() const { return num_features_; }
  int num_categories() const { return num_categories_; }
  const std::vector<std::string>& categories() const { return categories_; }
  const CountVector& row(std::size_t r) const { return rows_[r]; }
  int label(std::size_t r) const { return labels_[r]; }

  // Nonzero entries of one feature, ascending by row.
  std::span<const ColumnEntry> column(std::size_t feature) const {
    return std::span<const ColumnEntry>(entries_).subspan(
        offsets_[feature], offsets_[feature + 1] - offsets_[feature]);
  }

 private:
  std::span<const CountVector> rows_;
  std::vector<int> labels_;
  std::vector<std::string> categories_;
  int num_categories_;
  std::size_t num_features_;
  std::vector<std::size_t> offsets_;
  std::vector<ColumnEntry> entries_;
};

}  // namespace lexplain::trees

#endif  // LEXPLAIN_TREES_TRAINING_DATA_H_
