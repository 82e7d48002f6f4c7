#pragma once

// Greedy round-robin sentence selection under a length budget.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "swr/corpus.hpp"
#include "swr/diversity.hpp"

namespace swr {

enum class BudgetKind { words_abs, sentences_abs, words_pct, sentences_pct, chars_abs };

struct SummaryBudget {
  BudgetKind kind = BudgetKind::words_abs;
  double value = 100.0;

  /// Parses "100w", "5s", "665c", "30%w", "30%s" (case-insensitive).
  static SummaryBudget parse(std::string_view text);
  std::string to_string() const;

  /// Absolute limit L in the budget's own unit, for `doc`.
  /// Percentages round down with a minimum of 1.
  std::size_t resolve(const Document& doc) const;

  /// Size of sentence `s` in the budget's unit.
  std::size_t measure(const Sentence& s) const;
};

struct SummaryResult {
  std::vector<std::size_t> selected;  // 1-based sentence indices, ascending
  std::size_t total_words = 0;
  std::size_t total_sentences = 0;
  std::size_t total_chars = 0;
  std::size_t limit = 0;  // resolved budget
  bool over_budget = false;
  std::vector<double> unit_score;  // s'_i by 0-based position
};

/// s'_i = salience_i / char_length_i
std::vector<double> unit_scores(const std::vector<double>& salience, const Document& doc);

/// Clusters are ordered by their best remaining unit score and swept
/// repeatedly; each cluster contributes its best remaining sentence that fits
/// the remaining budget (non-fitting candidates are discarded). Stops when a
/// full sweep adds nothing. If nothing fits at all, the single best sentence
/// is returned and flagged over_budget.
SummaryResult round_robin_select(const std::vector<double>& unit, const ClusterAssignment& clusters,
                                 const SummaryBudget& budget, const Document& doc);

/// Fills the totals of `result` from its selection.
void measure_selection(SummaryResult& result, const Document& doc);

/// Picks sentences by descending `score` (ties: earlier sentence) while they
/// fit the budget; used by the judge-combined reference system.
SummaryResult top_score_select(const std::vector<double>& score, const SummaryBudget& budget, const Document& doc);

}  // namespace swr
