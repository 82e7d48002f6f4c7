#include "swr/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "swr/error.hpp"

namespace swr {

std::string_view profile_name(StructureProfile profile) noexcept {
  return profile == StructureProfile::uniform ? "uniform" : "inverted_pyramid";
}

StructureProfile parse_profile(std::string_view name) {
  if (name == "inverted_pyramid") return StructureProfile::inverted_pyramid;
  if (name == "uniform") return StructureProfile::uniform;
  throw InputError("unknown structure profile '" + std::string(name) + "'");
}

StructureBias compute_bias(const Document& doc, const WordGraph& graph, StructureProfile profile) {
  StructureBias bias;
  bias.profile = profile;
  const std::size_t n_nodes = graph.node_count();
  bias.node_prior.assign(n_nodes, 0.0);
  if (n_nodes == 0) return bias;

  bias.sentence_prior.resize(doc.sentences.size());
  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    bias.sentence_prior[k] = profile == StructureProfile::inverted_pyramid ? 1.0 / static_cast<double>(k + 1) : 1.0;
  }

  if (profile == StructureProfile::uniform) {
    bias.node_prior.assign(n_nodes, 1.0 / static_cast<double>(n_nodes));
    return bias;
  }

  // C(v): one contribution per distinct sentence containing v.
  std::vector<std::set<std::size_t>> containing(n_nodes);
  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    for (const Token& t : doc.sentences[k].tokens) {
      if (t.kept) containing[graph.id(t.stem)].insert(k);
    }
  }
  double total = 0.0;
  for (std::size_t v = 0; v < n_nodes; ++v) {
    for (std::size_t k : containing[v]) bias.node_prior[v] += bias.sentence_prior[k];
    total += bias.node_prior[v];
  }
  if (!(total > 0.0)) {
    bias.node_prior.assign(n_nodes, 1.0 / static_cast<double>(n_nodes));
    bias.fell_back_to_uniform = true;
    return bias;
  }
  for (double& p : bias.node_prior) p /= total;
  return bias;
}

PageRankResult biased_pagerank(const WordGraph& graph, std::span<const double> node_prior,
                               const PageRankOptions& options) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw GraphError("cannot rank an empty graph");
  if (node_prior.size() != n) throw GraphError("node prior size does not match graph");

  PageRankResult result;
  std::vector<double> current(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  // Outgoing share of each node's score, precomputed per iteration.
  std::vector<double> share(n);
  const double alpha = options.alpha;

  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      const double s = graph.strength(static_cast<std::uint32_t>(j));
      share[j] = s > 0.0 ? current[j] / s : 0.0;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double inflow = 0.0;
      for (const Adjacency& edge : graph.neighbours(static_cast<std::uint32_t>(i))) inflow += edge.weight * share[edge.node];
      next[i] = alpha * inflow + (1.0 - alpha) * node_prior[i];
      change += std::abs(next[i] - current[i]);
    }
    current.swap(next);
    result.iterations = iter;
    result.residual = change;
    if (change <= options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(current);
  return result;
}

PageRankResult textrank_pagerank(const WordGraph& graph, const PageRankOptions& options) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw GraphError("cannot rank an empty graph");

  PageRankResult result;
  std::vector<double> score(n, 1.0);
  std::vector<double> updated(n);
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    double change = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const Adjacency& edge : graph.neighbours(i)) {
        sum += edge.weight / graph.strength(edge.node) * score[edge.node];
      }
      updated[i] = (1.0 - options.alpha) + options.alpha * sum;
      change += std::abs(updated[i] - score[i]);
    }
    score.swap(updated);
    result.iterations = iter;
    result.residual = change;
    if (change <= options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(score);
  return result;
}

double softplus(double x) noexcept { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

std::vector<double> sentence_salience(const Document& doc, const WordGraph& graph, std::span<const double> word_score,
                                      bool use_softplus) {
  std::vector<double> salience(doc.sentences.size(), 0.0);
  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    double sum = 0.0;
    for (const Token& t : doc.sentences[k].tokens) {
      if (!t.kept) continue;
      const double w = word_score[graph.id(t.stem)];
      sum += use_softplus ? softplus(w) : w;
    }
    salience[k] = sum;
  }
  return salience;
}

}  // namespace swr
