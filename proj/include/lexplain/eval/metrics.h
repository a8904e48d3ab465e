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

#ifndef LEXPLAIN_EVAL_METRICS_H_
#define LEXPLAIN_EVAL_METRICS_H_

#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lexplain/error.h"

namespace lexplain::eval {

enum class Methodology { kOneToOne, kOneToThree };

inline std::string_view MethodologyName(Methodology m) {
  return m == Methodology::kOneToOne ? "1to1" : "1to3";
}

inline Methodology ParseMethodology(std::string_view name) {
  if (name == "1to1") return Methodology::kOneToOne;
  if (name == "1to3") return Methodology::kOneToThree;
  throw Error("unknown methodology '" + std::string(name) + "' (expected 1to1 or 1to3)");
}

struct LabeledPrediction {
  std::string id;
  std::string primary;
  std::vector<std::string> alternatives;
  std::string predicted;
};

inline bool IsHit(const LabeledPrediction& p, Methodology m) {
  if (p.predicted == p.primary) return true;
  if (m == Methodology::kOneToOne) return false;
  for (const std::string& alt : p.alternatives) {
    if (alt == p.predicted) return true;
  }
  return false;
}

struct CategoryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct Timings {
  double preprocess_seconds = 0.0;
  double train_seconds = 0.0;
  double predict_seconds = 0.0;
};

struct EvalReport {
  std::string jurisdiction;
  Methodology methodology = Methodology::kOneToOne;
  std::size_t size = 0;
  std::size_t hits = 0;
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  double weighted_recall = 0.0;
  std::map<std::string, CategoryMetrics> per_category;
  // Predictions naming a category outside the label set.
  std::vector<std::string> unknown_predictions;
  Timings timings;
};

// Per-category figures are computed against primary labels. A hit through an
// alternative label counts as a correct prediction of the primary category.
inline EvalReport Evaluate(std::span<const LabeledPrediction> predictions, Methodology methodology,
                           std::span<const std::string> label_set = {},
                           std::string jurisdiction = "") {
  if (predictions.empty()) throw Error("cannot evaluate an empty prediction set");
  std::set<std::string> labels(label_set.begin(), label_set.end());
  if (labels.empty()) {
    for (const LabeledPrediction& p : predictions) labels.insert(p.primary);
  }

  EvalReport r;
  r.jurisdiction = std::move(jurisdiction);
  r.methodology = methodology;
  r.size = predictions.size();
  std::map<std::string, std::size_t> tp, predicted;
  for (const LabeledPrediction& p : predictions) {
    ++r.per_category[p.primary].support;
    if (!labels.contains(p.predicted)) {
      r.unknown_predictions.push_back(p.id);
      continue;
    }
    if (IsHit(p, methodology)) {
      ++r.hits;
      ++tp[p.primary];
      ++predicted[p.primary];
    } else {
      ++predicted[p.predicted];
    }
  }
  for (const std::string& l : labels) r.per_category.try_emplace(l);

  const double n = static_cast<double>(r.size);
  for (auto& [name, m] : r.per_category) {
    const double t = static_cast<double>(tp[name]);
    m.precision = predicted[name] == 0 ? 0.0 : t / static_cast<double>(predicted[name]);
    m.recall = m.support == 0 ? 0.0 : t / static_cast<double>(m.support);
    m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    const double w = static_cast<double>(m.support) / n;
    r.weighted_f1 += w * m.f1;
    r.weighted_recall += w * m.recall;
  }
  r.accuracy = static_cast<double>(r.hits) / n;
  return r;
}

inline nlohmann::json ToJson(const EvalReport& r) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [name, m] : r.per_category) {
    per[name] = {{"precision", m.precision},
                 {"recall", m.recall},
                 {"f1", m.f1},
                 {"support", m.support}};
  }
  return {{"jurisdiction", r.jurisdiction},
          {"methodology", MethodologyName(r.methodology)},
          {"size", r.size},
          {"accuracy", r.accuracy},
          {"weighted_f1", r.weighted_f1},
          {"weighted_recall", r.weighted_recall},
          {"per_category", per},
          {"unknown_predictions", r.unknown_predictions},
          {"timings",
           {{"preprocess_seconds", r.timings.preprocess_seconds},
            {"train_seconds", r.timings.train_seconds},
            {"predict_seconds", r.timings.predict_seconds}}}};
}

// Evaluation of one jurisdiction on both test sets under both methodologies.
struct JurisdictionResults {
  std::string jurisdiction;
  EvalReport test1_1to1, test1_1to3, test2_1to1, test2_1to3;
  Timings timings;
};

namespace internal {

inline std::string Fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace internal

// One row per jurisdiction; accuracy, weighted F1 and weighted recall for
// each test set and methodology, then the three timings.
inline void WriteReportTable(std::ostream& out, std::span<const JurisdictionResults> rows) {
  out << "jurisdiction";
  for (const char* set : {"test1", "test2"}) {
    for (const char* m : {"1to1", "1to3"}) {
      for (const char* metric : {"accuracy", "f1", "recall"}) {
        out << '\t' << set << '_' << m << '_' << metric;
      }
    }
  }
  out << "\tpreprocess_s\ttrain_s\tpredict_s\n";
  for (const JurisdictionResults& row : rows) {
    out << row.jurisdiction;
    for (const EvalReport* r : {&row.test1_1to1, &row.test1_1to3, &row.test2_1to1, &row.test2_1to3}) {
      out << '\t' << internal::Fixed(r->accuracy) << '\t' << internal::Fixed(r->weighted_f1) << '\t'
          << internal::Fixed(r->weighted_recall);
    }
    out << '\t' << internal::Fixed(row.timings.preprocess_seconds, 3) << '\t'
        << internal::Fixed(row.timings.train_seconds, 3) << '\t'
        << internal::Fixed(row.timings.predict_seconds, 3) << '\n';
  }
}

}  // namespace lexplain::eval

#endif  // LEXPLAIN_EVAL_METRICS_H_
