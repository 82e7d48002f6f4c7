#include "swr/graph.hpp"

#include <algorithm>
#include <cmath>

#include "swr/error.hpp"
#include "swr/kernels.hpp"

namespace swr {

NodeIndex NodeIndex::from_document(const Document& doc) {
  NodeIndex index;
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) {
      if (!t.kept) continue;
      const auto [it, inserted] = index.ids.try_emplace(t.stem, static_cast<std::uint32_t>(index.stems.size()));
      if (inserted) index.stems.push_back(t.stem);
    }
  }
  return index;
}

WordGraph::WordGraph(std::vector<std::string> nodes, EdgeWeights cooc, EdgeWeights sem)
    : nodes_(std::move(nodes)), cooc_(std::move(cooc)), sem_(std::move(sem)) {
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) ids_.emplace(nodes_[i], i);
  combined_ = cooc_;
  for (const auto& [pair, w] : sem_) combined_[pair] += w;

  adjacency_.assign(nodes_.size(), {});
  strength_.assign(nodes_.size(), 0.0);
  for (const auto& [pair, w] : combined_) {
    if (w <= 0.0) continue;
    adjacency_[pair.u].push_back({pair.v, w});
    adjacency_[pair.v].push_back({pair.u, w});
    strength_[pair.u] += w;
    strength_[pair.v] += w;
  }
}

double WordGraph::weight(const EdgeWeights& channel, std::uint32_t a, std::uint32_t b) {
  const auto it = channel.find(NodePair(a, b));
  return it == channel.end() ? 0.0 : it->second;
}

std::uint32_t WordGraph::id(const std::string& stem) const {
  const auto it = ids_.find(stem);
  if (it == ids_.end()) throw GraphError("unknown node '" + stem + "'");
  return it->second;
}

void WordGraph::write_edge_list(std::ostream& out) const {
  for (const auto& [pair, w] : combined_) {
    out << nodes_[pair.u] << '\t' << nodes_[pair.v] << '\t' << weight(cooc_, pair.u, pair.v) << '\t'
        << weight(sem_, pair.u, pair.v) << '\t' << w << '\n';
  }
}

EdgeWeights build_cooccurrence(const Document& doc, const NodeIndex& index, std::size_t window) {
  EdgeWeights counts;
  if (window < 2) return counts;
  std::vector<std::uint32_t> stream;
  for (const Sentence& s : doc.sentences) {
    stream.clear();
    for (const Token& t : s.tokens) {
      if (t.kept) stream.push_back(index.ids.at(t.stem));
    }
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const std::size_t last = std::min(stream.size(), i + window);
      for (std::size_t j = i + 1; j < last; ++j) {
        if (stream[i] != stream[j]) counts[NodePair(stream[i], stream[j])] += 1.0;
      }
    }
  }
  return counts;
}

std::vector<std::vector<double>> node_vectors(const Document& doc, const NodeIndex& index,
                                              const EmbeddingTable& table) {
  const auto surfaces = representative_surfaces(doc);
  std::vector<std::vector<double>> vectors(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto it = surfaces.find(index.stems[i]);
    if (it == surfaces.end()) continue;
    if (const auto v = table.lookup(it->second)) vectors[i].assign(v->begin(), v->end());
  }
  return vectors;
}

EdgeWeights build_semantic(const std::vector<std::vector<double>>& vectors, double threshold) {
  EdgeWeights weights;
  std::vector<double> norms(vectors.size(), 0.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) norms[i] = std::sqrt(kernels::squared_norm(vectors[i]));

  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (norms[i] == 0.0) continue;
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      if (norms[j] == 0.0 || vectors[j].size() != vectors[i].size()) continue;
      const double c = std::clamp(kernels::dot(vectors[i], vectors[j]) / (norms[i] * norms[j]), -1.0, 1.0);
      if (c > threshold) {
        weights[NodePair(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))] = c;
      }
    }
  }
  return weights;
}

EdgeWeights max_normalize(const EdgeWeights& channel) {
  double max_w = 0.0;
  for (const auto& [pair, w] : channel) max_w = std::max(max_w, w);
  EdgeWeights out;
  if (max_w <= 0.0) return out;
  for (const auto& [pair, w] : channel) {
    if (w > 0.0) out.emplace(pair, w / max_w);
  }
  return out;
}

WordGraph normalize_and_combine(std::vector<std::string> nodes, const EdgeWeights& cooc, const EdgeWeights& sem) {
  EdgeWeights cooc_n = max_normalize(cooc);
  EdgeWeights sem_n = max_normalize(sem);
  if (cooc_n.empty() && sem_n.empty()) throw GraphError("no edges");
  return WordGraph(std::move(nodes), std::move(cooc_n), std::move(sem_n));
}

void attach_sentence_membership(WordGraph& graph, const Document& doc) {
  graph.node_sentences.clear();
  for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
    for (const Token& t : doc.sentences[k].tokens) {
      if (t.kept) graph.node_sentences[t.stem].insert(k);
    }
  }
}

}  // namespace swr
