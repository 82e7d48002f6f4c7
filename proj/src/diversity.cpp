#include "swr/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "swr/error.hpp"
#include "swr/kernels.hpp"

namespace swr {
namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Eigen::MatrixXd normalized_laplacian(const SquareMatrix& a, const std::vector<std::size_t>& rows) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd inv_sqrt_degree(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double degree = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) degree += a(rows[i], rows[j]);
    inv_sqrt_degree(i) = degree > 0.0 ? 1.0 / std::sqrt(degree) : 0.0;
  }
  Eigen::MatrixXd lap(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      lap(i, j) = (i == j ? 1.0 : 0.0) - inv_sqrt_degree(i) * a(rows[i], rows[j]) * inv_sqrt_degree(j);
    }
  }
  return lap;
}

struct KMeansRun {
  std::vector<std::size_t> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

double squared_row_distance(const Eigen::MatrixXd& points, Eigen::Index row, const Eigen::MatrixXd& centers,
                            Eigen::Index center) {
  return (points.row(row) - centers.row(center)).squaredNorm();
}

KMeansRun kmeans_once(const Eigen::MatrixXd& points, std::size_t k, std::mt19937_64& rng, std::size_t max_iterations) {
  const Eigen::Index n = points.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd centers(kk, points.cols());

  // k-means++ seeding.
  std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  auto first = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
  centers.row(0) = points.row(first);
  chosen[static_cast<std::size_t>(first)] = true;
  for (Eigen::Index c = 1; c < kk; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[static_cast<std::size_t>(i)] =
          std::min(nearest[static_cast<std::size_t>(i)], squared_row_distance(points, i, centers, c - 1));
      total += nearest[static_cast<std::size_t>(i)];
    }
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double running = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        running += nearest[static_cast<std::size_t>(i)];
        if (running > target && nearest[static_cast<std::size_t>(i)] > 0.0) {
          pick = i;
          break;
        }
      }
    }
    if (pick < 0) {
      // All remaining mass is zero (duplicate points): take the first unused.
      for (Eigen::Index i = 0; i < n && pick < 0; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) pick = i;
      }
    }
    centers.row(c) = points.row(pick);
    chosen[static_cast<std::size_t>(pick)] = true;
  }

  KMeansRun run;
  run.labels.assign(static_cast<std::size_t>(n), k);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < kk; ++c) {
        const double d = squared_row_distance(points, i, centers, c);
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::size_t>(c);
        }
      }
      if (run.labels[static_cast<std::size_t>(i)] != best) {
        run.labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(kk, points.cols());
    std::vector<std::size_t> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(static_cast<Eigen::Index>(run.labels[static_cast<std::size_t>(i)])) += points.row(i);
      ++counts[run.labels[static_cast<std::size_t>(i)]];
    }
    for (Eigen::Index c = 0; c < kk; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        continue;
      }
      // Empty cluster: move its center onto the worst-fitting point.
      Eigen::Index worst = 0;
      double worst_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d =
            squared_row_distance(points, i, centers, static_cast<Eigen::Index>(run.labels[static_cast<std::size_t>(i)]));
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      centers.row(c) = points.row(worst);
      run.labels[static_cast<std::size_t>(worst)] = static_cast<std::size_t>(c);
    }
  }

  run.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    run.inertia += squared_row_distance(points, i, centers, static_cast<Eigen::Index>(run.labels[static_cast<std::size_t>(i)]));
  }
  return run;
}

}  // namespace

void SentenceBag::add(const std::string& stem, std::span<const double> vector, double weight) {
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) throw InputError("bag vector dimension mismatch for '" + stem + "'");
  for (std::size_t i = 0; i < stems_.size(); ++i) {
    if (stems_[i] == stem) {
      mass_[i] += weight;
      return;
    }
  }
  stems_.push_back(stem);
  mass_.push_back(weight);
  vectors_.insert(vectors_.end(), vector.begin(), vector.end());
}

void SentenceBag::normalize() {
  const double total = std::accumulate(mass_.begin(), mass_.end(), 0.0);
  if (total <= 0.0) return;
  for (double& m : mass_) m /= total;
}

std::vector<SentenceBag> sentence_bags(const Document& doc, const EmbeddingTable& table) {
  const auto surfaces = representative_surfaces(doc);
  std::vector<SentenceBag> bags;
  bags.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) {
    SentenceBag bag(table.dimension());
    for (const Token& t : s.tokens) {
      if (!t.kept) continue;
      const auto v = table.lookup(surfaces.at(t.stem));
      if (v) bag.add(t.stem, *v);
    }
    bag.normalize();
    bags.push_back(std::move(bag));
  }
  return bags;
}

std::vector<double> ground_distances(const SentenceBag& a, const SentenceBag& b) {
  std::vector<double> d(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      d[i * b.size() + j] = std::sqrt(kernels::squared_distance(a.vector(i), b.vector(j)));
    }
  }
  return d;
}

double relaxed_transport_cost(const SentenceBag& from, const SentenceBag& to) {
  double cost = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      nearest = std::min(nearest, kernels::squared_distance(from.vector(i), to.vector(j)));
    }
    cost += from.mass()[i] * std::sqrt(nearest);
  }
  return cost;
}

double relaxed_wmd(const SentenceBag& a, const SentenceBag& b) {
  if (a.empty() || b.empty()) throw InputError("relaxed_wmd requires non-empty bags");
  return std::max(relaxed_transport_cost(a, b), relaxed_transport_cost(b, a));
}

DistanceMatrix sentence_distances(const std::vector<SentenceBag>& bags) {
  const std::size_t n = bags.size();
  DistanceMatrix out{SquareMatrix(n), std::vector<bool>(n, false), 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (bags[i].empty()) {
      out.degenerate[i] = true;
      ++out.degenerate_count;
    }
  }
  double max_observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.degenerate[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (out.degenerate[j]) continue;
      const double d = relaxed_wmd(bags[i], bags[j]);
      out.distance(i, j) = out.distance(j, i) = d;
      max_observed = std::max(max_observed, d);
    }
  }
  const double far = max_observed + 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (out.degenerate[i] || out.degenerate[j]) out.distance(i, j) = out.distance(j, i) = far;
    }
  }
  return out;
}

double affinity(double dist, double gamma) noexcept { return std::exp(-gamma * dist * dist); }

SquareMatrix affinity_matrix(const SquareMatrix& distance, double gamma) {
  SquareMatrix a(distance.n);
  for (std::size_t i = 0; i < distance.n; ++i) {
    for (std::size_t j = 0; j < distance.n; ++j) a(i, j) = i == j ? 1.0 : affinity(distance(i, j), gamma);
  }
  return a;
}

std::size_t cluster_count(std::size_t n_sentences) noexcept {
  const auto by_fraction = static_cast<std::size_t>(std::floor(0.3 * static_cast<double>(n_sentences)));
  return std::max<std::size_t>(1, std::min<std::size_t>(by_fraction, 8));
}

std::vector<double> laplacian_spectrum(const SquareMatrix& affinity) {
  std::vector<std::size_t> rows(affinity.n);
  std::iota(rows.begin(), rows.end(), 0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_laplacian(affinity, rows),
                                                              Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

ClusterAssignment spectral_cluster(const SquareMatrix& affinity, std::size_t c_num, const SpectralOptions& options) {
  const std::size_t n = affinity.n;
  ClusterAssignment out;
  out.c_num = std::max<std::size_t>(c_num, 1);
  out.label.assign(n, 0);
  if (n <= 1) return out;
  if (out.c_num >= n) {
    std::iota(out.label.begin(), out.label.end(), 0);
    return out;
  }

  std::vector<std::size_t> connected;
  std::vector<std::size_t> isolated;
  for (std::size_t i = 0; i < n; ++i) {
    double off_diagonal = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) off_diagonal += affinity(i, j);
    }
    (off_diagonal > 0.0 ? connected : isolated).push_back(i);
  }

  std::vector<std::size_t> sub_labels(connected.size(), 0);
  const std::size_t k = std::min(out.c_num, connected.size());
  if (k == connected.size()) {
    std::iota(sub_labels.begin(), sub_labels.end(), 0);
  } else if (k > 1) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_laplacian(affinity, connected));
    Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < embedding.rows(); ++i) {
      const double norm = embedding.row(i).norm();
      if (norm > 0.0) embedding.row(i) /= norm;
    }
    KMeansRun best;
    for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
      std::mt19937_64 rng(options.seed + 0x9E3779B97F4A7C15ULL * r);
      KMeansRun run = kmeans_once(embedding, k, rng, options.max_iterations);
      if (run.inertia < best.inertia) best = std::move(run);
    }
    sub_labels = std::move(best.labels);
  }

  // Renumber by first appearance so equal partitions compare equal.
  std::vector<std::size_t> remap(connected.size() + 1, n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < connected.size(); ++i) {
    if (remap[sub_labels[i]] == n) remap[sub_labels[i]] = next++;
    out.label[connected[i]] = remap[sub_labels[i]];
  }
  for (std::size_t i : isolated) out.label[i] = next++;
  out.c_num = std::max(out.c_num, next);

  // Final pass: ids in order of first appearance across the whole document.
  std::vector<std::size_t> order(next, n);
  std::size_t id = 0;
  for (std::size_t& l : out.label) {
    if (order[l] == n) order[l] = id++;
    l = order[l];
  }
  return out;
}

}  // namespace swr
