#include "swr/rouge.hpp"

#include <algorithm>
#include <map>

#include "swr/corpus.hpp"
#include "swr/error.hpp"

namespace swr::rouge {
namespace {

using Counts = std::map<std::string, std::size_t>;

Counts ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  Counts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += ' ';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

// Unigrams keyed as-is; skip-bigrams keyed "a\x1fb" so the two unit types
// never collide.
Counts su4_counts(const std::vector<std::string>& tokens) {
  constexpr std::size_t kMaxSkip = 4;
  Counts counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++counts[tokens[i]];
    const std::size_t last = std::min(tokens.size(), i + kMaxSkip + 2);
    for (std::size_t j = i + 1; j < last; ++j) ++counts[tokens[i] + '\x1f' + tokens[j]];
  }
  return counts;
}

std::size_t total(const Counts& c) {
  std::size_t t = 0;
  for (const auto& [key, n] : c) t += n;
  return t;
}

std::size_t clipped_matches(const Counts& candidate, const Counts& reference) {
  std::size_t m = 0;
  for (const auto& [key, n] : reference) {
    const auto it = candidate.find(key);
    if (it != candidate.end()) m += std::min(n, it->second);
  }
  return m;
}

double aggregate(const std::vector<double>& values, Aggregation aggregation) {
  if (values.empty()) return 0.0;
  if (aggregation == Aggregation::max) return *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

template <typename CountFn>
Recall recall_against(const std::vector<std::string>& candidate, const std::vector<std::vector<std::string>>& references,
                      std::size_t min_tokens, Aggregation aggregation, CountFn count) {
  Recall r;
  const Counts cand = count(candidate);
  for (const auto& ref : references) {
    if (ref.size() < min_tokens) {
      ++r.short_references;
      r.per_reference.push_back(0.0);
      continue;
    }
    const Counts ref_counts = count(ref);
    const std::size_t denom = total(ref_counts);
    r.per_reference.push_back(denom == 0 ? 0.0
                                         : static_cast<double>(clipped_matches(cand, ref_counts)) /
                                               static_cast<double>(denom));
  }
  r.value = aggregate(r.per_reference, aggregation);
  return r;
}

}  // namespace

Aggregation parse_aggregation(std::string_view name) {
  if (name == "average" || name == "avg") return Aggregation::average;
  if (name == "max") return Aggregation::max;
  throw InputError("unknown aggregation '" + std::string(name) + "'");
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    tokens.push_back(options.stem ? porter_stem(current) : current);
    current.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || u >= 0x80) {
      current.push_back(c);
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Recall rouge_n(const std::vector<std::string>& candidate, const std::vector<std::vector<std::string>>& references,
               std::size_t n, Aggregation aggregation) {
  if (n == 0) throw InputError("ROUGE-N requires n >= 1");
  return recall_against(candidate, references, n, aggregation,
                        [n](const std::vector<std::string>& t) { return ngram_counts(t, n); });
}

Recall rouge_su4(const std::vector<std::string>& candidate, const std::vector<std::vector<std::string>>& references,
                 Aggregation aggregation) {
  return recall_against(candidate, references, 1, aggregation, su4_counts);
}

RougeReport evaluate(std::string_view candidate, const std::vector<std::string>& references,
                     const TokenizerOptions& tokenizer, Aggregation aggregation) {
  const auto cand = tokenize(candidate, tokenizer);
  std::vector<std::vector<std::string>> refs;
  refs.reserve(references.size());
  for (const auto& r : references) refs.push_back(tokenize(r, tokenizer));

  const Recall r1 = rouge_n(cand, refs, 1, aggregation);
  const Recall r2 = rouge_n(cand, refs, 2, aggregation);
  const Recall su4 = rouge_su4(cand, refs, aggregation);

  RougeReport report;
  report.aggregation = aggregation;
  report.aggregate = {r1.value, r2.value, su4.value};
  for (std::size_t i = 0; i < refs.size(); ++i) {
    report.per_reference.push_back({r1.per_reference[i], r2.per_reference[i], su4.per_reference[i]});
  }
  report.warnings = r1.short_references + r2.short_references + su4.short_references;
  return report;
}

}  // namespace swr::rouge
