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

#ifndef LEXPLAIN_FEATURIZE_CHI2_H_
#define LEXPLAIN_FEATURIZE_CHI2_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lexplain/error.h"
#include "lexplain/featurize/feature_space.h"
#include "lexplain/featurize/vectorize.h"

namespace lexplain::featurize {

struct Chi2Report {
  std::vector<double> scores;
  // Ascending feature indices.
  std::vector<int> selected;
  double percentile = 20.0;
};

// Number of features kept by a percentile selection: ceil(p/100 * n), at
// least one when n > 0.
inline std::size_t PercentileCount(double percentile, std::size_t n) {
  if (n == 0) return 0;
  const double raw = percentile * static_cast<double>(n) / 100.0;
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

// Chi-squared statistic of every feature against the category labels, using
// count mass: O_c is the summed count of the feature over documents of c and
// E_c = (sum_c O_c) * N_c / N. Keeps the top percentile by score, ties to the
// lower feature index.
inline Chi2Report Chi2Select(std::span<const CountVector> vectors,
                             std::span<const std::string> labels,
                             std::size_t feature_count, double percentile = 20.0) {
  if (vectors.size() != labels.size()) {
    throw Error("chi-squared selection: " + std::to_string(vectors.size()) +
                " vectors but " + std::to_string(labels.size()) + " labels");
  }
  if (percentile <= 0.0 || percentile > 100.0) {
    throw Error("selection percentile must lie in (0, 100]");
  }
  std::map<std::string, int> category_of;
  for (const std::string& l : labels) category_of.emplace(l, 0);
  if (category_of.size() < 2) {
    throw Error("chi-squared undefined: fewer than two categories");
  }
  int next = 0;
  for (auto& [label, id] : category_of) id = next++;
  const std::size_t k = category_of.size();

  std::vector<double> docs_per_category(k, 0.0);
  std::vector<double> observed(feature_count * k, 0.0);
  for (std::size_t d = 0; d < vectors.size(); ++d) {
    const auto c = static_cast<std::size_t>(category_of.at(labels[d]));
    docs_per_category[c] += 1.0;
    for (const auto& e : vectors[d].entries) {
      if (e.feature < 0 || static_cast<std::size_t>(e.feature) >= feature_count) {
        throw Error("count vector index outside the feature space");
      }
      observed[static_cast<std::size_t>(e.feature) * k + c] += e.count;
    }
  }
  const double n_docs = static_cast<double>(vectors.size());

  Chi2Report report;
  report.percentile = percentile;
  report.scores.assign(feature_count, 0.0);
  for (std::size_t f = 0; f < feature_count; ++f) {
    const double* o = &observed[f * k];
    const double total = std::accumulate(o, o + k, 0.0);
    if (total == 0.0) continue;
    double score = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double expected = total * docs_per_category[c] / n_docs;
      if (expected > 0.0) {
        const double diff = o[c] - expected;
        score += diff * diff / expected;
      }
    }
    report.scores[f] = score;
  }

  std::vector<int> order(feature_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return report.scores[static_cast<std::size_t>(a)] >
           report.scores[static_cast<std::size_t>(b)];
  });
  order.resize(PercentileCount(percentile, feature_count));
  std::sort(order.begin(), order.end());
  report.selected = std::move(order);
  return report;
}

// "index<TAB>kind<TAB>text<TAB>score<TAB>selected" rows after a header.
inline void WriteSelectionReport(std::ostream& out, const FeatureSpace& fs,
                                 const Chi2Report& report) {
  std::vector<bool> chosen(fs.size(), false);
  for (int i : report.selected) chosen[static_cast<std::size_t>(i)] = true;
  out << "index\tkind\ttext\tscore\tselected\n";
  for (const Feature& f : fs.features()) {
    const auto i = static_cast<std::size_t>(f.index);
    out << f.index << '\t' << KindName(f.kind) << '\t' << f.text << '\t'
        << internal::DoubleToString(report.scores[i]) << '\t'
        << (chosen[i] ? 1 : 0) << '\n';
  }
}

}  // namespace lexplain::featurize

#endif  // LEXPLAIN_FEATURIZE_CHI2_H_
