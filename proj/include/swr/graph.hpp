#pragma once

// Undirected word graph with separate co-occurrence and semantic channels.

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "swr/corpus.hpp"
#include "swr/embeddings.hpp"

namespace swr {

/// Unordered node pair stored as (min, max).
struct NodePair {
  std::uint32_t u = 0;
  std::uint32_t v = 0;

  NodePair() = default;
  NodePair(std::uint32_t a, std::uint32_t b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Sparse symmetric edge map keyed by canonical pairs; ordered so that
/// iteration (and any dump) is deterministic.
using EdgeWeights = std::map<NodePair, double>;

/// Vocabulary of a document: distinct kept stems in first-occurrence order.
struct NodeIndex {
  std::vector<std::string> stems;
  std::unordered_map<std::string, std::uint32_t> ids;

  static NodeIndex from_document(const Document& doc);
  std::size_t size() const noexcept { return stems.size(); }
};

struct Adjacency {
  std::uint32_t node = 0;
  double weight = 0.0;
};

class WordGraph {
 public:
  WordGraph() = default;
  WordGraph(std::vector<std::string> nodes, EdgeWeights cooc, EdgeWeights sem);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const EdgeWeights& cooc_weight() const noexcept { return cooc_; }
  const EdgeWeights& sem_weight() const noexcept { return sem_; }
  const EdgeWeights& combined() const noexcept { return combined_; }

  /// Weight of one channel, 0 when the edge is absent. Symmetric in (a, b).
  static double weight(const EdgeWeights& channel, std::uint32_t a, std::uint32_t b);

  /// Neighbours of `node` in the combined channel.
  const std::vector<Adjacency>& neighbours(std::uint32_t node) const { return adjacency_[node]; }

  /// Sum of combined weights incident to `node`.
  double strength(std::uint32_t node) const { return strength_[node]; }

  std::uint32_t id(const std::string& stem) const;

  /// Map stem -> 0-based indices of sentences containing it.
  std::unordered_map<std::string, std::set<std::size_t>> node_sentences;

  /// `u<TAB>v<TAB>w_c<TAB>w_s<TAB>w` per combined edge.
  void write_edge_list(std::ostream& out) const;

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  EdgeWeights cooc_;
  EdgeWeights sem_;
  EdgeWeights combined_;
  std::vector<std::vector<Adjacency>> adjacency_;
  std::vector<double> strength_;
};

/// Raw co-occurrence counts: every pair of kept tokens in the same sentence
/// at distance < window contributes one count to its (distinct) stem pair.
EdgeWeights build_cooccurrence(const Document& doc, const NodeIndex& index, std::size_t window);

/// Raw semantic weights: cosine of the nodes' vectors where it exceeds
/// `threshold` strictly. `vectors[i]` is empty for unresolvable node i.
EdgeWeights build_semantic(const std::vector<std::vector<double>>& vectors, double threshold);

/// Resolves node vectors through each stem's representative surface form.
std::vector<std::vector<double>> node_vectors(const Document& doc, const NodeIndex& index,
                                              const EmbeddingTable& table);

/// Max-normalizes each channel to [0, 1] and sums them per edge.
/// Throws GraphError("no edges") when both channels are empty.
WordGraph normalize_and_combine(std::vector<std::string> nodes, const EdgeWeights& cooc, const EdgeWeights& sem);

/// Divides every weight by the channel maximum.
EdgeWeights max_normalize(const EdgeWeights& channel);

void attach_sentence_membership(WordGraph& graph, const Document& doc);

}  // namespace swr
