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

#ifndef LEXPLAIN_EXPLAIN_DICTIONARY_H_
#define LEXPLAIN_EXPLAIN_DICTIONARY_H_

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexplain/corpus/judgment.h"
#include "lexplain/error.h"
#include "lexplain/explain/bags.h"
#include "lexplain/textprep/normalize.h"

namespace lexplain::explain {

// Number of top bag terms shown to the expert.
inline constexpr std::size_t kQuestionnaireSize = 50;

inline constexpr std::string_view kQuestion1 = "Is this term relevant in legal texts?";

inline std::string Question2(std::string_view category, std::string_view jurisdiction) {
  return "Is this term relevant to the law category " + std::string(category) +
         " pertaining to the jurisdiction " + std::string(jurisdiction) + "?";
}

struct SheetRow {
  std::string term;
  std::optional<bool> q1;
  std::optional<bool> q2;
  bool operator==(const SheetRow&) const = default;
};

struct Questionnaire {
  std::string jurisdiction;
  std::string category;
  std::vector<SheetRow> rows;
  bool operator==(const Questionnaire&) const = default;
};

// The k most frequent terms of the bag, unanswered.
inline Questionnaire MakeQuestionnaire(const CategoryBag& bag, std::size_t k = kQuestionnaireSize) {
  Questionnaire q{bag.jurisdiction, bag.category, {}};
  for (std::size_t i = 0; i < bag.terms.size() && i < k; ++i) {
    q.rows.push_back({bag.terms[i].text, std::nullopt, std::nullopt});
  }
  return q;
}

inline constexpr std::string_view kSheetMagic = "# lexplain questionnaire v1";

namespace internal {

inline std::string AnswerText(const std::optional<bool>& a) {
  if (!a) return "";
  return *a ? "yes" : "no";
}

// yes/no, case-insensitive, with the Spanish "si"/"sí". Empty means unanswered.
inline std::optional<bool> ParseAnswer(std::string_view cell, const std::string& source,
                                       std::size_t line) {
  const std::string a = textprep::Fold(corpus::internal::Trim(cell));
  if (a.empty()) return std::nullopt;
  if (a == "yes" || a == "y" || a == "si" || a == "s") return true;
  if (a == "no" || a == "n") return false;
  throw ParseError(source, line, "answer '" + std::string(cell) + "' is not yes/no");
}

inline std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    cols.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

}  // namespace internal

// Tab-separated "term<TAB>Q1<TAB>Q2" rows under '#' header lines that carry
// the jurisdiction, the category and the two questions.
inline void WriteQuestionnaire(std::ostream& out, const Questionnaire& q) {
  out << kSheetMagic << '\n'
      << "# jurisdiction\t" << q.jurisdiction << '\n'
      << "# category\t" << q.category << '\n'
      << "# Q1\t" << kQuestion1 << '\n'
      << "# Q2\t" << Question2(q.category, q.jurisdiction) << '\n'
      << "term\tQ1\tQ2\n";
  for (const SheetRow& r : q.rows) {
    out << r.term << '\t' << internal::AnswerText(r.q1) << '\t' << internal::AnswerText(r.q2)
        << '\n';
  }
}

inline Questionnaire ReadQuestionnaire(std::istream& in, const std::string& source = "<sheet>") {
  Questionnaire q;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto cols = internal::SplitTabs(line);
      if (cols.size() == 2 && cols[0] == "# jurisdiction") q.jurisdiction = cols[1];
      if (cols.size() == 2 && cols[0] == "# category") q.category = cols[1];
      continue;
    }
    if (!header_seen && line.starts_with("term\t")) {
      header_seen = true;
      continue;
    }
    const auto cols = internal::SplitTabs(line);
    if (cols.size() > 3) throw ParseError(source, line_no, "expected term<TAB>Q1<TAB>Q2");
    SheetRow row{cols[0], std::nullopt, std::nullopt};
    if (cols.size() > 1) row.q1 = internal::ParseAnswer(cols[1], source, line_no);
    if (cols.size() > 2) row.q2 = internal::ParseAnswer(cols[2], source, line_no);
    q.rows.push_back(std::move(row));
  }
  return q;
}

// Prompts for every unanswered cell on out and reads replies from in.
inline void AnswerInteractively(Questionnaire& q, std::istream& in, std::ostream& out) {
  const std::string q2 = Question2(q.category, q.jurisdiction);
  const auto ask = [&](const std::string& term, std::string_view question) {
    while (true) {
      out << "[" << term << "] " << question << " (yes/no): " << std::flush;
      std::string reply;
      if (!std::getline(in, reply)) throw Error("input ended before the questionnaire was complete");
      try {
        if (auto a = internal::ParseAnswer(reply, "<stdin>", 0)) return *a;
      } catch (const ParseError&) {
      }
      out << "please answer yes or no\n";
    }
  };
  for (SheetRow& r : q.rows) {
    if (!r.q1) r.q1 = ask(r.term, kQuestion1);
    if (!r.q2) r.q2 = ask(r.term, q2);
  }
}

// Accepted terms of one (jurisdiction, category): those answered yes to both
// questions. The full set of answers is kept as an audit trail.
struct ExpertDictionary {
  std::string jurisdiction;
  std::string category;
  std::vector<SheetRow> audit;
  std::set<std::string> accepted;

  bool Accepts(std::string_view term) const { return accepted.contains(std::string(term)); }

  // Percentages of presented terms answered yes to each question and to both.
  double q1_rate() const { return Rate([](const SheetRow& r) { return *r.q1; }); }
  double q2_rate() const { return Rate([](const SheetRow& r) { return *r.q2; }); }
  double acceptance_rate() const { return Rate([](const SheetRow& r) { return *r.q1 && *r.q2; }); }

  bool operator==(const ExpertDictionary&) const = default;

 private:
  template <typename Pred>
  double Rate(Pred pred) const {
    if (audit.empty()) return 0.0;
    std::size_t yes = 0;
    for (const SheetRow& r : audit) yes += pred(r) ? 1 : 0;
    return 100.0 * static_cast<double>(yes) / static_cast<double>(audit.size());
  }
};

// presented, when given, lists the terms the sheet was generated from; any
// other term in the sheet is rejected.
inline ExpertDictionary ImportDictionary(
    const Questionnaire& sheet,
    const std::optional<std::vector<std::string>>& presented = std::nullopt) {
  ExpertDictionary d{sheet.jurisdiction, sheet.category, {}, {}};
  std::set<std::string> seen;
  for (const SheetRow& r : sheet.rows) {
    if (!r.q1 || !r.q2) throw Error("term '" + r.term + "' is not fully answered");
    if (presented && std::find(presented->begin(), presented->end(), r.term) == presented->end()) {
      throw Error("unknown term '" + r.term + "' is not in the questionnaire for " +
                  sheet.jurisdiction + " / " + sheet.category);
    }
    if (!seen.insert(r.term).second) throw Error("term '" + r.term + "' answered twice");
    d.audit.push_back(r);
    if (*r.q1 && *r.q2) d.accepted.insert(r.term);
  }
  return d;
}

inline constexpr std::string_view kDictionaryMagic = "# lexplain dictionary v1";

// Header lines, then "term<TAB>Q1<TAB>Q2<TAB>accepted" for every reviewed term.
inline void WriteDictionary(std::ostream& out, const ExpertDictionary& d) {
  out << kDictionaryMagic << '\n'
      << "# jurisdiction\t" << d.jurisdiction << '\n'
      << "# category\t" << d.category << '\n'
      << "term\tQ1\tQ2\taccepted\n";
  for (const SheetRow& r : d.audit) {
    out << r.term << '\t' << internal::AnswerText(r.q1) << '\t' << internal::AnswerText(r.q2)
        << '\t' << (d.Accepts(r.term) ? "yes" : "no") << '\n';
  }
}

inline ExpertDictionary ReadDictionary(std::istream& in, const std::string& source = "<dictionary>") {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with(kDictionaryMagic)) {
    throw ParseError(source, 1, "not a dictionary file");
  }
  Questionnaire q;
  std::size_t line_no = 1;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = internal::SplitTabs(line);
    if (line.front() == '#') {
      if (cols.size() == 2 && cols[0] == "# jurisdiction") q.jurisdiction = cols[1];
      if (cols.size() == 2 && cols[0] == "# category") q.category = cols[1];
      continue;
    }
    if (!header_seen && cols[0] == "term") {
      header_seen = true;
      continue;
    }
    if (cols.size() != 4) throw ParseError(source, line_no, "expected 4 columns");
    q.rows.push_back({cols[0], internal::ParseAnswer(cols[1], source, line_no),
                      internal::ParseAnswer(cols[2], source, line_no)});
  }
  return ImportDictionary(q);
}

}  // namespace lexplain::explain

#endif  // LEXPLAIN_EXPLAIN_DICTIONARY_H_
