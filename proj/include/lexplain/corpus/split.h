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

#ifndef LEXPLAIN_CORPUS_SPLIT_H_
#define LEXPLAIN_CORPUS_SPLIT_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lexplain/corpus/judgment.h"
#include "lexplain/error.h"
#include "lexplain/random.h"

namespace lexplain::corpus {

// Categories above this size are downsampled.
inline constexpr std::size_t kDownsampleAbove = 5000;
// Categories below this size are left out of train and test #1.
inline constexpr std::size_t kMinCategorySize = 50;

struct SplitOptions {
  std::uint64_t seed = 0;
  // Split 80/20 inside each category instead of over the whole pool.
  bool stratified = false;
};

struct Downsampling {
  std::size_t original = 0;
  std::size_t retained = 0;
  bool operator==(const Downsampling&) const = default;
};

// Index sets are ascending positions into the dataset's judgments. The id
// lists mirror them.
struct SplitResult {
  std::string jurisdiction;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test1;
  std::vector<std::size_t> test2;
  std::vector<std::string> train_ids;
  std::vector<std::string> test1_ids;
  std::vector<std::string> test2_ids;
  std::set<std::string> discarded_categories;
  std::map<std::string, Downsampling> downsampled_categories;
  std::uint64_t seed = 0;
  bool stratified = false;

  bool operator==(const SplitResult&) const = default;
};

// Size every category above kDownsampleAbove is reduced to: the smallest
// multiple of 1000 strictly greater than the largest category below
// kDownsampleAbove, or kDownsampleAbove itself when there is none. Returns
// nullopt when no category needs downsampling.
inline std::optional<std::size_t> DownsampleTarget(
    const std::map<std::string, std::size_t>& counts) {
  bool any_large = false;
  std::optional<std::size_t> reference;
  for (const auto& [category, n] : counts) {
    if (n > kDownsampleAbove) any_large = true;
    if (n < kDownsampleAbove) reference = std::max(reference.value_or(0), n);
  }
  if (!any_large) return std::nullopt;
  if (!reference) return kDownsampleAbove;
  return (*reference / 1000 + 1) * 1000;
}

// Number of judgments kept for training out of an eligible pool of n.
inline constexpr std::size_t TrainSize(std::size_t n) { return (4 * n + 2) / 5; }

// Largest-remainder apportionment of 'total' seats proportionally to
// 'weights'. Leftover seats go to the largest fractional remainders, ties to
// the larger weight, then to the earlier entry.
inline std::vector<std::size_t> ApportionLargestRemainder(
    std::span<const std::size_t> weights, std::size_t total) {
  const std::size_t sum = std::accumulate(weights.begin(), weights.end(),
                                          std::size_t{0});
  std::vector<std::size_t> seats(weights.size(), 0);
  if (sum == 0) return seats;
  std::vector<std::size_t> remainder(weights.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const unsigned __int128 product =
        static_cast<unsigned __int128>(total) * weights[i];
    seats[i] = static_cast<std::size_t>(product / sum);
    remainder[i] = static_cast<std::size_t>(product % sum);
    assigned += seats[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return weights[a] > weights[b];
  });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
    ++seats[order[k % order.size()]];
  }
  return seats;
}

namespace internal {

inline std::vector<std::string> IdsOf(const JurisdictionDataset& d,
                                      const std::vector<std::size_t>& idx) {
  std::vector<std::string> ids;
  ids.reserve(idx.size());
  for (std::size_t i : idx) ids.push_back(d.judgments()[i].id);
  return ids;
}

}  // namespace internal

// Train / test #1 / test #2 split for one jurisdiction.
//
//  1. Categories with more than 5,000 samples are randomly downsampled to
//     DownsampleTarget().
//  2. Categories with fewer than 50 samples are discarded from train/test #1.
//  3. The remaining pool is shuffled and split 80/20 into train and test #1.
//  4. Test #2 has the size of test #1 and is drawn without replacement from the
//     judgments outside train, apportioning seats to categories by their share
//     of the full dataset. It may overlap test #1.
//
// Pure function of (dataset, options).
inline SplitResult SplitDataset(const JurisdictionDataset& d,
                                const SplitOptions& options) {
  if (d.empty()) throw Error("cannot split empty dataset");
  SplitResult result;
  result.jurisdiction = d.jurisdiction();
  result.seed = options.seed;
  result.stratified = options.stratified;

  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < d.size(); ++i) {
    members[d.judgments()[i].primary_category].push_back(i);
  }

  Rng downsample_rng(DeriveSeed(options.seed, 1));
  Rng split_rng(DeriveSeed(options.seed, 2));
  Rng test2_rng(DeriveSeed(options.seed, 3));

  const std::optional<std::size_t> target = DownsampleTarget(d.category_counts());
  std::map<std::string, std::vector<std::size_t>> retained;
  for (const auto& [category, idx] : members) {
    if (idx.size() < kMinCategorySize) {
      result.discarded_categories.insert(category);
      continue;
    }
    std::vector<std::size_t> kept = idx;
    if (target && kept.size() > kDownsampleAbove) {
      downsample_rng.SampleFront(std::span(kept), *target);
      kept.resize(*target);
      std::sort(kept.begin(), kept.end());
      result.downsampled_categories[category] = {idx.size(), kept.size()};
    }
    retained.emplace(category, std::move(kept));
  }
  if (retained.empty()) {
    throw Error("no eligible categories in jurisdiction '" + d.jurisdiction() +
                "': every category has fewer than " +
                std::to_string(kMinCategorySize) + " samples");
  }

  if (options.stratified) {
    for (auto& [category, idx] : retained) {
      split_rng.Shuffle(std::span(idx));
      const std::size_t n_train = TrainSize(idx.size());
      result.train.insert(result.train.end(), idx.begin(), idx.begin() + n_train);
      result.test1.insert(result.test1.end(), idx.begin() + n_train, idx.end());
    }
  } else {
    std::vector<std::size_t> pool;
    for (const auto& [category, idx] : retained) {
      pool.insert(pool.end(), idx.begin(), idx.end());
    }
    std::sort(pool.begin(), pool.end());
    split_rng.Shuffle(std::span(pool));
    const std::size_t n_train = TrainSize(pool.size());
    result.train.assign(pool.begin(), pool.begin() + n_train);
    result.test1.assign(pool.begin() + n_train, pool.end());
  }
  std::sort(result.train.begin(), result.train.end());
  std::sort(result.test1.begin(), result.test1.end());

  // Test #2.
  std::vector<bool> in_train(d.size(), false);
  for (std::size_t i : result.train) in_train[i] = true;
  std::vector<std::string> categories;
  std::vector<std::size_t> weights;
  std::vector<std::vector<std::size_t>> available;
  for (const auto& [category, idx] : members) {
    categories.push_back(category);
    weights.push_back(idx.size());
    auto& avail = available.emplace_back();
    for (std::size_t i : idx) {
      if (!in_train[i]) avail.push_back(i);
    }
  }
  const std::size_t wanted = result.test1.size();
  const std::size_t total_available = d.size() - result.train.size();
  if (total_available < wanted) {
    throw Error("test #2 needs " + std::to_string(wanted) +
                " judgments but only " + std::to_string(total_available) +
                " lie outside the train set");
  }
  std::vector<std::size_t> seats = ApportionLargestRemainder(weights, wanted);

  // A category with fewer spare judgments than seats gives the surplus to
  // the others, cycling through them in largest-weight order.
  std::size_t deficit = 0;
  for (std::size_t c = 0; c < seats.size(); ++c) {
    if (seats[c] > available[c].size()) {
      deficit += seats[c] - available[c].size();
      seats[c] = available[c].size();
    }
  }
  if (deficit > 0) {
    std::vector<std::size_t> order(seats.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return weights[a] > weights[b];
                     });
    while (deficit > 0) {
      for (std::size_t c : order) {
        if (deficit == 0) break;
        if (seats[c] < available[c].size()) {
          ++seats[c];
          --deficit;
        }
      }
    }
  }
  for (std::size_t c = 0; c < seats.size(); ++c) {
    test2_rng.SampleFront(std::span(available[c]), seats[c]);
    result.test2.insert(result.test2.end(), available[c].begin(),
                        available[c].begin() + seats[c]);
  }
  std::sort(result.test2.begin(), result.test2.end());

  result.train_ids = internal::IdsOf(d, result.train);
  result.test1_ids = internal::IdsOf(d, result.test1);
  result.test2_ids = internal::IdsOf(d, result.test2);
  return result;
}

inline nlohmann::json ToJson(const SplitResult& s) {
  nlohmann::json downsampled = nlohmann::json::object();
  for (const auto& [category, info] : s.downsampled_categories) {
    downsampled[category] = {{"original", info.original},
                             {"retained", info.retained}};
  }
  return {{"jurisdiction", s.jurisdiction},
          {"train", s.train_ids},
          {"test1", s.test1_ids},
          {"test2", s.test2_ids},
          {"discarded_categories", s.discarded_categories},
          {"downsampled_categories", downsampled}};
}

// Rebuilds a split from its id lists, resolving ids against the dataset.
inline SplitResult SplitFromJson(const nlohmann::json& j,
                                 const JurisdictionDataset& d,
                                 std::uint64_t seed, bool stratified) {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < d.size(); ++i) position[d.judgments()[i].id] = i;
  const auto resolve = [&](const nlohmann::json& ids,
                           std::vector<std::size_t>& idx,
                           std::vector<std::string>& names) {
    for (const auto& id : ids) {
      const std::string name = id.get<std::string>();
      const auto it = position.find(name);
      if (it == position.end()) {
        throw Error("split refers to unknown judgment '" + name + "'");
      }
      idx.push_back(it->second);
      names.push_back(name);
    }
  };
  SplitResult s;
  s.jurisdiction = j.at("jurisdiction").get<std::string>();
  s.seed = seed;
  s.stratified = stratified;
  resolve(j.at("train"), s.train, s.train_ids);
  resolve(j.at("test1"), s.test1, s.test1_ids);
  resolve(j.at("test2"), s.test2, s.test2_ids);
  for (const auto& c : j.at("discarded_categories")) {
    s.discarded_categories.insert(c.get<std::string>());
  }
  for (const auto& [category, info] : j.at("downsampled_categories").items()) {
    s.downsampled_categories[category] = {info.at("original").get<std::size_t>(),
                                          info.at("retained").get<std::size_t>()};
  }
  return s;
}

}  // namespace lexplain::corpus

#endif  // LEXPLAIN_CORPUS_SPLIT_H_
