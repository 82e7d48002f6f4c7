#pragma once

// Reference computations used only by the tests. Each one solves its problem
// by a different method than the library does.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Fixed point of W = alpha * M W + (1 - alpha) * p, with M[i][j] = w_ji / s_j,
// solved as a dense linear system. `w` is a symmetric weight matrix.
inline std::vector<double> pagerank_solve(const std::vector<std::vector<double>>& w, const std::vector<double>& p,
                                          double alpha) {
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) s += w[j][k];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (s > 0.0) a(i, j) -= alpha * w[j][i] / s;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = (1.0 - alpha) * p[i];
  const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
  return {x.data(), x.data() + n};
}

// Exact transportation cost between integer supplies and demands (equal
// totals) by successive shortest paths with Bellman-Ford on the residual
// graph. Small instances only.
inline double min_cost_transport(const std::vector<long>& supply, const std::vector<long>& demand,
                                 const std::vector<double>& cost /* row-major supply x demand */) {
  const std::size_t m = supply.size();
  const std::size_t k = demand.size();
  const std::size_t source = m + k;
  const std::size_t sink = source + 1;
  const std::size_t nodes = sink + 1;

  struct Arc {
    std::size_t to;
    long cap;
    double cost;
    std::size_t rev;
  };
  std::vector<std::vector<Arc>> g(nodes);
  auto add = [&](std::size_t u, std::size_t v, long cap, double c) {
    g[u].push_back({v, cap, c, g[v].size()});
    g[v].push_back({u, 0, -c, g[u].size() - 1});
  };
  long total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    add(source, i, supply[i], 0.0);
    total += supply[i];
  }
  for (std::size_t j = 0; j < k; ++j) add(m + j, sink, demand[j], 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) add(i, m + j, total, cost[i * k + j]);
  }

  double result = 0.0;
  long flow = 0;
  const double inf = std::numeric_limits<double>::infinity();
  while (flow < total) {
    std::vector<double> dist(nodes, inf);
    std::vector<std::size_t> prev_node(nodes), prev_arc(nodes);
    dist[source] = 0.0;
    for (std::size_t round = 0; round + 1 < nodes; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < nodes; ++u) {
        if (dist[u] == inf) continue;
        for (std::size_t e = 0; e < g[u].size(); ++e) {
          const Arc& arc = g[u][e];
          if (arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] - 1e-15) {
            dist[arc.to] = dist[u] + arc.cost;
            prev_node[arc.to] = u;
            prev_arc[arc.to] = e;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[sink] == inf) break;
    long push = total - flow;
    for (std::size_t v = sink; v != source; v = prev_node[v]) push = std::min(push, g[prev_node[v]][prev_arc[v]].cap);
    for (std::size_t v = sink; v != source; v = prev_node[v]) {
      Arc& arc = g[prev_node[v]][prev_arc[v]];
      arc.cap -= push;
      g[v][arc.rev].cap += push;
    }
    flow += push;
    result += static_cast<double>(push) * dist[sink];
  }
  return result;
}

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Word bag with integer multiplicities, for exact WMD via the transport
// oracle. Scaling by the other bag's total gives integer flows.
struct IntBag {
  std::vector<std::vector<double>> vectors;
  std::vector<long> count;
  long total() const {
    long t = 0;
    for (long c : count) t += c;
    return t;
  }
};

inline double exact_wmd(const IntBag& a, const IntBag& b) {
  const long ta = a.total();
  const long tb = b.total();
  std::vector<long> supply, demand;
  for (long c : a.count) supply.push_back(c * tb);
  for (long c : b.count) demand.push_back(c * ta);
  std::vector<double> cost;
  for (const auto& u : a.vectors) {
    for (const auto& v : b.vectors) cost.push_back(euclidean(u, v));
  }
  return min_cost_transport(supply, demand, cost) / static_cast<double>(ta * tb);
}

// True when sending every unit of `from` to its nearest stem in `to` already
// meets `to`'s demands exactly (the one-sided relaxation is then a feasible
// plan).
inline bool nearest_plan_feasible(const IntBag& from, const IntBag& to) {
  const long tf = from.total();
  const long tt = to.total();
  std::vector<long> inflow(to.count.size(), 0);
  for (std::size_t i = 0; i < from.vectors.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.vectors.size(); ++j) {
      const double d = euclidean(from.vectors[i], to.vectors[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    inflow[best] += from.count[i] * tt;
  }
  for (std::size_t j = 0; j < to.count.size(); ++j) {
    if (inflow[j] != to.count[j] * tf) return false;
  }
  return true;
}

}  // namespace oracle
