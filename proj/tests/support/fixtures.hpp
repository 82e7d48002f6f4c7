#pragma once

// Fixture builders shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "swr/corpus.hpp"
#include "swr/diversity.hpp"
#include "swr/graph.hpp"
#include "swr/selection.hpp"

namespace fixture {

using namespace swr;

inline WordGraph graph_from_matrix(const std::vector<std::vector<double>>& w) {
  std::vector<std::string> nodes;
  EdgeWeights cooc;
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    nodes.push_back("v" + std::to_string(i));
    for (std::uint32_t j = i + 1; j < w.size(); ++j) {
      if (w[i][j] > 0) cooc[NodePair(i, j)] = w[i][j];
    }
  }
  // Max-normalization rescales every weight by one constant, which leaves
  // the transition shares unchanged.
  return normalize_and_combine(nodes, cooc, {});
}

inline std::vector<std::vector<double>> random_weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() % 2 == 0) w[i][j] = w[j][i] = u(rng);
    }
  }
  w[0][1] = w[1][0] = w[0][1] > 0 ? w[0][1] : 1.0;
  return w;
}

inline std::vector<double> random_prior(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> p(n);
  for (double& x : p) x = u(rng);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  return p;
}

// Right-hand side of the biased update evaluated at w.
inline std::vector<double> apply_update(const WordGraph& g, const std::vector<double>& w, const std::vector<double>& p,
                                 double alpha) {
  std::vector<double> out(w.size());
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    double sum = 0.0;
    for (std::uint32_t j = 0; j < w.size(); ++j) {
      const double wji = WordGraph::weight(g.combined(), j, i);
      if (wji > 0) sum += wji / g.strength(j) * w[j];
    }
    out[i] = alpha * sum + (1 - alpha) * p[i];
  }
  return out;
}

inline double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

inline SentenceBag to_bag(const oracle::IntBag& b) {
  SentenceBag bag;
  for (std::size_t i = 0; i < b.vectors.size(); ++i) {
    bag.add("s" + std::to_string(i), b.vectors[i], static_cast<double>(b.count[i]));
  }
  bag.normalize();
  return bag;
}

inline oracle::IntBag random_int_bag(std::mt19937_64& rng, std::size_t max_stems) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  oracle::IntBag b;
  const std::size_t m = 1 + rng() % max_stems;
  for (std::size_t i = 0; i < m; ++i) {
    b.vectors.push_back({u(rng), u(rng), u(rng)});
    b.count.push_back(1 + static_cast<long>(rng() % 3));
  }
  return b;
}

inline SquareMatrix planted(std::size_t block, double within, double across) {
  SquareMatrix a(2 * block);
  for (std::size_t i = 0; i < 2 * block; ++i) {
    for (std::size_t j = 0; j < 2 * block; ++j) {
      a(i, j) = i == j ? 1.0 : ((i < block) == (j < block) ? within : across);
    }
  }
  return a;
}

inline Document sized_doc(const std::vector<std::size_t>& words, const std::vector<std::size_t>& chars) {
  Document doc;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Sentence s;
    s.index = i + 1;
    s.word_count = words[i];
    s.char_length = chars[i];
    s.raw_text = std::string(chars[i], 'x');
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

inline ClusterAssignment labels(std::vector<std::size_t> l) {
  ClusterAssignment c;
  c.label = std::move(l);
  c.c_num = 1 + *std::max_element(c.label.begin(), c.label.end());
  return c;
}

// Straightforward re-statement of the round robin: sets of remaining
inline // sentences per cluster, scanned linearly.
std::vector<std::size_t> reference_round_robin(const std::vector<double>& unit, const std::vector<std::size_t>& label,
                                               const std::vector<std::size_t>& size, std::size_t limit) {
  const std::size_t k = 1 + *std::max_element(label.begin(), label.end());
  std::vector<std::set<std::size_t>> remaining(k);
  for (std::size_t i = 0; i < label.size(); ++i) remaining[label[i]].insert(i);
  auto best_of = [&](const std::set<std::size_t>& s) {
    std::size_t best = *s.begin();
    for (std::size_t i : s) {
      if (unit[i] > unit[best]) best = i;
    }
    return best;
  };
  std::vector<std::size_t> picked;
  std::size_t used = 0;
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < k; ++c) {
      if (!remaining[c].empty()) order.push_back(c);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const std::size_t ba = best_of(remaining[a]), bb = best_of(remaining[b]);
      return unit[ba] != unit[bb] ? unit[ba] > unit[bb] : ba < bb;
    });
    for (std::size_t c : order) {
      while (!remaining[c].empty()) {
        const std::size_t i = best_of(remaining[c]);
        remaining[c].erase(i);
        if (used + size[i] <= limit) {
          used += size[i];
          picked.push_back(i + 1);
          progress = true;
          break;
        }
      }
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace fixture
