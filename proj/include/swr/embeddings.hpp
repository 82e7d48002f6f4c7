#pragma once

// Pre-trained word vectors in the word2vec/fastText text format.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "swr/corpus.hpp"

namespace swr {

enum class OovPolicy { skip, zero };

struct LoadReport {
  std::size_t lines = 0;
  std::size_t loaded = 0;
  std::size_t filtered = 0;    // dropped by the vocabulary filter
  std::size_t duplicates = 0;  // later line replaced an earlier one
  std::size_t zero_rejected = 0;
  bool had_header = false;

  /// Single-line JSON suitable for a structured log.
  std::string to_log_line() const;
};

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t dimension, OovPolicy policy = OovPolicy::skip);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return index_.size(); }
  bool empty() const noexcept { return index_.empty(); }
  OovPolicy oov_policy() const noexcept { return policy_; }
  void set_oov_policy(OovPolicy policy) noexcept { policy_ = policy; }

  bool contains(std::string_view token) const;

  /// Inserts or replaces. Returns false if `token` was already present.
  /// Throws InputError on a dimension mismatch or (under skip policy) an
  /// all-zero vector.
  bool insert(std::string token, std::span<const double> vector);

  /// Stored vector, or an all-zero vector under the zero policy, or nothing.
  std::optional<std::span<const double>> lookup(std::string_view token) const;

  /// Euclidean norm of a stored vector, cached at insertion.
  std::optional<double> norm(std::string_view token) const;

 private:
  std::size_t dimension_ = 0;
  OovPolicy policy_ = OovPolicy::skip;
  std::vector<double> data_;  // row-major, one row per token
  std::vector<double> norms_;
  std::vector<double> zeros_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LoadedEmbeddings {
  EmbeddingTable table;
  LoadReport report;
};

/// Reads `[count dim]\n token v1 ... vd` lines. When `vocab_filter` is given,
/// only those tokens are kept. Throws LoadError naming the offending line.
LoadedEmbeddings load_embeddings(const std::filesystem::path& path,
                                 const std::unordered_set<std::string>* vocab_filter = nullptr,
                                 OovPolicy policy = OovPolicy::skip);

/// Cosine similarity, or nothing if either token is unresolved or zero-norm.
std::optional<double> cosine(std::string_view a, std::string_view b, const EmbeddingTable& table);
std::optional<double> cosine(std::span<const double> a, std::span<const double> b);

/// Maps each kept stem of `doc` to the surface form used for its vector:
/// the most frequent kept surface, ties broken by first occurrence.
std::unordered_map<std::string, std::string> representative_surfaces(const Document& doc);

/// Surface words of `doc` that may need a vector (load-time vocab filter).
std::unordered_set<std::string> document_vocabulary(const Document& doc);

}  // namespace swr
