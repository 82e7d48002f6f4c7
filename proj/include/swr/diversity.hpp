#pragma once

// Subtopic structure: relaxed Word Mover's Distance between sentences, RBF
// affinities, and normalized spectral clustering.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swr/corpus.hpp"
#include "swr/embeddings.hpp"

namespace swr {

/// Normalized bag of words over a sentence's embeddable stems.
class SentenceBag {
 public:
  SentenceBag() = default;
  explicit SentenceBag(std::size_t dimension) : dimension_(dimension) {}

  /// Adds `weight` units of mass for `stem`; repeated stems accumulate.
  void add(const std::string& stem, std::span<const double> vector, double weight = 1.0);

  /// Rescales mass to sum to one.
  void normalize();

  bool empty() const noexcept { return stems_.empty(); }
  std::size_t size() const noexcept { return stems_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<std::string>& stems() const noexcept { return stems_; }
  const std::vector<double>& mass() const noexcept { return mass_; }
  std::span<const double> vector(std::size_t i) const {
    return {vectors_.data() + i * dimension_, dimension_};
  }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> stems_;
  std::vector<double> mass_;
  std::vector<double> vectors_;
};

/// One bag per sentence. Unresolvable stems are dropped (skip policy) or
/// carried with a zero vector (zero policy) before normalization.
std::vector<SentenceBag> sentence_bags(const Document& doc, const EmbeddingTable& table);

/// Euclidean ground-distance matrix, row-major |a| x |b|.
std::vector<double> ground_distances(const SentenceBag& a, const SentenceBag& b);

/// Cost of moving all of `from`'s mass to its nearest stems in `to`,
/// ignoring `to`'s capacities.
double relaxed_transport_cost(const SentenceBag& from, const SentenceBag& to);

/// max of the two one-sided relaxations; a lower bound on exact WMD.
/// Both bags must be non-empty.
double relaxed_wmd(const SentenceBag& a, const SentenceBag& b);

/// Dense n x n matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size, double fill = 0.0) : n(size), values(size * size, fill) {}
  double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

struct DistanceMatrix {
  SquareMatrix distance;
  std::vector<bool> degenerate;  // sentence bag was empty
  std::size_t degenerate_count = 0;
};

/// Pairwise RWMD. Pairs involving an empty bag get (max observed RWMD + 1).
DistanceMatrix sentence_distances(const std::vector<SentenceBag>& bags);

/// exp(-gamma * dist^2)
double affinity(double dist, double gamma = 1.0) noexcept;

SquareMatrix affinity_matrix(const SquareMatrix& distance, double gamma = 1.0);

/// max(1, min(floor(0.3 n), 8))
std::size_t cluster_count(std::size_t n_sentences) noexcept;

struct ClusterAssignment {
  std::size_t c_num = 1;
  std::vector<std::size_t> label;  // by 0-based sentence position
};

struct SpectralOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
};

/// Symmetric-normalized-Laplacian spectral clustering followed by seeded
/// k-means++ on the row-normalized eigenvector embedding. Labels are
/// renumbered in order of first appearance. Sentences with no affinity to
/// any other sentence get their own cluster.
ClusterAssignment spectral_cluster(const SquareMatrix& affinity, std::size_t c_num, const SpectralOptions& options = {});

/// Eigenvalues (ascending) of the symmetric normalized Laplacian.
std::vector<double> laplacian_spectrum(const SquareMatrix& affinity);

}  // namespace swr
