#include "swr/selection.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "swr/error.hpp"

namespace swr {

SummaryBudget SummaryBudget::parse(std::string_view text) {
  if (text.size() < 2) throw InputError("invalid budget '" + std::string(text) + "'");
  const char unit = static_cast<char>(std::tolower(static_cast<unsigned char>(text.back())));
  std::string_view number = text.substr(0, text.size() - 1);
  const bool pct = !number.empty() && number.back() == '%';
  if (pct) number.remove_suffix(1);

  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc() || ptr != number.data() + number.size() || !(value > 0.0)) {
    throw InputError("invalid budget '" + std::string(text) + "'");
  }

  SummaryBudget b;
  b.value = value;
  switch (unit) {
    case 'w':
      b.kind = pct ? BudgetKind::words_pct : BudgetKind::words_abs;
      break;
    case 's':
      b.kind = pct ? BudgetKind::sentences_pct : BudgetKind::sentences_abs;
      break;
    case 'c':
      if (pct) throw InputError("character budgets must be absolute: '" + std::string(text) + "'");
      b.kind = BudgetKind::chars_abs;
      break;
    default:
      throw InputError("invalid budget unit in '" + std::string(text) + "'");
  }
  if (pct && value > 100.0) throw InputError("percentage budget above 100: '" + std::string(text) + "'");
  if (!pct && value < 1.0) throw InputError("absolute budget below 1: '" + std::string(text) + "'");
  return b;
}

std::string SummaryBudget::to_string() const {
  std::ostringstream out;
  out << value;
  switch (kind) {
    case BudgetKind::words_abs:
      out << 'w';
      break;
    case BudgetKind::sentences_abs:
      out << 's';
      break;
    case BudgetKind::words_pct:
      out << "%w";
      break;
    case BudgetKind::sentences_pct:
      out << "%s";
      break;
    case BudgetKind::chars_abs:
      out << 'c';
      break;
  }
  return out.str();
}

std::size_t SummaryBudget::resolve(const Document& doc) const {
  auto pct_of = [this](std::size_t total) {
    const auto l = static_cast<std::size_t>(std::floor(value / 100.0 * static_cast<double>(total) + 1e-9));
    return std::max<std::size_t>(l, 1);
  };
  switch (kind) {
    case BudgetKind::words_pct:
      return pct_of(doc.total_words());
    case BudgetKind::sentences_pct:
      return pct_of(doc.sentences.size());
    default:
      return static_cast<std::size_t>(std::floor(value));
  }
}

std::size_t SummaryBudget::measure(const Sentence& s) const {
  switch (kind) {
    case BudgetKind::words_abs:
    case BudgetKind::words_pct:
      return s.word_count;
    case BudgetKind::sentences_abs:
    case BudgetKind::sentences_pct:
      return 1;
    case BudgetKind::chars_abs:
      return s.char_length;
  }
  return 1;
}

std::vector<double> unit_scores(const std::vector<double>& salience, const Document& doc) {
  std::vector<double> unit(doc.sentences.size(), 0.0);
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    unit[i] = salience[i] / static_cast<double>(doc.sentences[i].char_length);
  }
  return unit;
}

void measure_selection(SummaryResult& result, const Document& doc) {
  std::sort(result.selected.begin(), result.selected.end());
  result.total_sentences = result.selected.size();
  result.total_words = 0;
  result.total_chars = 0;
  for (std::size_t idx : result.selected) {
    result.total_words += doc.sentences[idx - 1].word_count;
    result.total_chars += doc.sentences[idx - 1].char_length;
  }
}

namespace {

bool better(const std::vector<double>& score, std::size_t a, std::size_t b) {
  if (score[a] != score[b]) return score[a] > score[b];
  return a < b;
}

void fallback_single(SummaryResult& result, const std::vector<double>& score) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < score.size(); ++i) {
    if (better(score, i, best)) best = i;
  }
  result.selected = {best + 1};
  result.over_budget = true;
}

}  // namespace

SummaryResult round_robin_select(const std::vector<double>& unit, const ClusterAssignment& clusters,
                                 const SummaryBudget& budget, const Document& doc) {
  const std::size_t n = doc.sentences.size();
  if (n == 0) throw InputError("cannot summarize an empty document");
  if (unit.size() != n || clusters.label.size() != n) throw InputError("score/cluster size does not match document");

  SummaryResult result;
  result.unit_score = unit;
  result.limit = budget.resolve(doc);

  std::size_t n_clusters = 0;
  for (std::size_t l : clusters.label) n_clusters = std::max(n_clusters, l + 1);
  std::vector<std::vector<std::size_t>> queues(n_clusters);
  for (std::size_t i = 0; i < n; ++i) queues[clusters.label[i]].push_back(i);
  for (auto& q : queues) {
    std::sort(q.begin(), q.end(), [&](std::size_t a, std::size_t b) { return better(unit, a, b); });
  }
  std::vector<std::size_t> head(n_clusters, 0);

  std::size_t used = 0;
  bool added = true;
  while (added) {
    added = false;
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < n_clusters; ++c) {
      if (head[c] < queues[c].size()) order.push_back(c);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return better(unit, queues[a][head[a]], queues[b][head[b]]);
    });
    for (std::size_t c : order) {
      while (head[c] < queues[c].size()) {
        const std::size_t candidate = queues[c][head[c]++];
        const std::size_t size = budget.measure(doc.sentences[candidate]);
        if (used + size <= result.limit) {
          used += size;
          result.selected.push_back(candidate + 1);
          added = true;
          break;
        }
      }
    }
  }

  if (result.selected.empty()) fallback_single(result, unit);
  measure_selection(result, doc);
  return result;
}

SummaryResult top_score_select(const std::vector<double>& score, const SummaryBudget& budget, const Document& doc) {
  const std::size_t n = doc.sentences.size();
  if (n == 0) throw InputError("cannot summarize an empty document");
  SummaryResult result;
  result.unit_score = score;
  result.limit = budget.resolve(doc);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return better(score, a, b); });
  std::size_t used = 0;
  for (std::size_t i : order) {
    const std::size_t size = budget.measure(doc.sentences[i]);
    if (used + size <= result.limit) {
      used += size;
      result.selected.push_back(i + 1);
    }
  }
  if (result.selected.empty()) fallback_single(result, score);
  measure_selection(result, doc);
  return result;
}

}  // namespace swr
