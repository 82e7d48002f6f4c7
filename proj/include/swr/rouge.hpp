#pragma once

// Multi-reference ROUGE-1/2 and ROUGE-SU4 recall.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace swr::rouge {

enum class Aggregation { average, max };

Aggregation parse_aggregation(std::string_view name);

struct TokenizerOptions {
  bool stem = true;
};

/// Lowercase alphanumeric runs, optionally Porter-stemmed.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {});

struct Recall {
  double value = 0.0;
  std::vector<double> per_reference;
  std::size_t short_references = 0;  // references with too few tokens
};

Recall rouge_n(const std::vector<std::string>& candidate, const std::vector<std::vector<std::string>>& references,
               std::size_t n, Aggregation aggregation = Aggregation::average);

/// Unigrams plus ordered skip-bigrams with at most four tokens in between.
Recall rouge_su4(const std::vector<std::string>& candidate, const std::vector<std::vector<std::string>>& references,
                 Aggregation aggregation = Aggregation::average);

struct Triple {
  double r1 = 0.0;
  double r2 = 0.0;
  double rsu4 = 0.0;
};

struct RougeReport {
  Triple aggregate;
  std::vector<Triple> per_reference;
  Aggregation aggregation = Aggregation::average;
  std::size_t warnings = 0;
};

RougeReport evaluate(std::string_view candidate, const std::vector<std::string>& references,
                     const TokenizerOptions& tokenizer = {}, Aggregation aggregation = Aggregation::average);

}  // namespace swr::rouge
