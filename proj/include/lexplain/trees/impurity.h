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

#ifndef LEXPLAIN_TREES_IMPURITY_H_
#define LEXPLAIN_TREES_IMPURITY_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "lexplain/error.h"

namespace lexplain::trees {

enum class Criterion { kGini, kEntropy };

inline const char* CriterionName(Criterion c) {
  return c == Criterion::kGini ? "gini" : "entropy";
}

inline Criterion ParseCriterion(std::string_view name) {
  if (name == "gini") return Criterion::kGini;
  // "entrophy" is accepted as a spelling variant found in older configs.
  if (name == "entropy" || name == "entrophy") return Criterion::kEntropy;
  throw Error("unknown criterion '" + std::string(name) + "'");
}

// Gini: 1 - sum p^2. Entropy: -sum p log2 p, with 0 log 0 = 0.
inline double Impurity(std::span<const std::int64_t> counts, Criterion criterion) {
  std::int64_t total = 0;
  for (std::int64_t c : counts) {
    if (c < 0) throw Error("negative category count");
    total += c;
  }
  if (total == 0) throw Error("impurity of an empty node");
  const double n = static_cast<double>(total);
  double acc = 0.0;
  if (criterion == Criterion::kGini) {
    for (std::int64_t c : counts) {
      const double p = static_cast<double>(c) / n;
      acc += p * p;
    }
    return 1.0 - acc;
  }
  for (std::int64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    acc -= p * std::log2(p);
  }
  return acc;
}

}  // namespace lexplain::trees

#endif  // LEXPLAIN_TREES_IMPURITY_H_
