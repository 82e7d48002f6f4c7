#pragma once

// Article-structure-biased PageRank over the word graph and Softplus
// sentence salience.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swr/corpus.hpp"
#include "swr/graph.hpp"

namespace swr {

enum class StructureProfile { inverted_pyramid, uniform };

std::string_view profile_name(StructureProfile profile) noexcept;
StructureProfile parse_profile(std::string_view name);

struct StructureBias {
  StructureProfile profile = StructureProfile::inverted_pyramid;
  std::vector<double> sentence_prior;  // s_k, indexed by k - 1
  std::vector<double> node_prior;      // P(v), indexed by node id; sums to 1
  bool fell_back_to_uniform = false;
};

/// Sentence priors s_k = 1/k (inverted pyramid) feed C(v), the sum of s_k
/// over the distinct sentences containing v; P(v) = C(v) / sum C.
StructureBias compute_bias(const Document& doc, const WordGraph& graph, StructureProfile profile);

struct PageRankOptions {
  double alpha = 0.85;
  double tolerance = 1e-6;  // L1 change between iterates
  std::size_t max_iterations = 100;
};

struct PageRankResult {
  std::vector<double> scores;  // indexed by node id
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Iterates W(i) = alpha * sum_j w_ji / strength(j) * W(j) + (1 - alpha) * P(i)
/// from W = 1/|V|. Isolated nodes settle at (1 - alpha) * P(i). On hitting
/// max_iterations the last iterate is returned with converged = false.
PageRankResult biased_pagerank(const WordGraph& graph, std::span<const double> node_prior,
                               const PageRankOptions& options = {});

/// Classic TextRank iteration with a constant (1 - alpha) teleport term.
/// Its fixed point is |V| times the uniform-prior biased fixed point.
PageRankResult textrank_pagerank(const WordGraph& graph, const PageRankOptions& options = {});

/// ln(1 + e^x) without overflow.
double softplus(double x) noexcept;

/// Per-sentence (0-based) salience: the sum over kept token occurrences of
/// softplus(W'(stem)), or of W'(stem) itself when `use_softplus` is false.
std::vector<double> sentence_salience(const Document& doc, const WordGraph& graph, std::span<const double> word_score,
                                      bool use_softplus = true);

}  // namespace swr
