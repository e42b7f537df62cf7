// Copyright 2026 The Wilks Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wilks/beta_model.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "wilks/errors.h"

namespace wilks {
namespace {

void CheckDimension(const SimpleGraph& g, std::span<const double> beta) {
  if (beta.size() != static_cast<std::size_t>(g.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter vector has " + std::to_string(beta.size()) +
                    " entries for " + std::to_string(g.size()) + " vertices");
  }
}

double EdgeProbability(double beta_i, double beta_j) {
  return 1.0 / (1.0 + std::exp(-(beta_i + beta_j)));
}

[[noreturn]] void ThrowNoMle(const std::string& why) {
  ExistenceVerdict verdict;
  verdict.exists = false;
  throw NoMleError("MLE does not exist: " + why, std::move(verdict));
}

// Tracks the residual history for stall detection.
class StallMonitor {
 public:
  explicit StallMonitor(int window) : window_(window) {}

  // True once the residual has failed to drop below its value `window`
  // sweeps ago.
  bool Stalled(double residual) {
    history_.push_back(residual);
    const std::size_t size = history_.size();
    if (window_ <= 0 || size <= static_cast<std::size_t>(window_)) {
      return false;
    }
    return residual >= history_[size - 1 - window_];
  }

 private:
  int window_;
  std::vector<double> history_;
};

void CheckBound(double merit, int vertex, const SolverOptions& options) {
  if (!(std::abs(std::log(merit)) <= options.divergence_bound)) {
    ThrowNoMle("|beta_" + std::to_string(vertex + 1) +
               "| escaped the divergence bound");
  }
}

// Dinic's algorithm on a dense-ish residual network with 64-bit capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adjacency_(nodes), level_(nodes), next_(nodes) {}

  void AddEdge(int from, int to, std::int64_t capacity) {
    adjacency_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, capacity});
    adjacency_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
  }

  std::int64_t Run(int source, int sink) {
    std::int64_t total = 0;
    while (BuildLevels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (std::int64_t pushed =
                 Push(source, sink, std::numeric_limits<std::int64_t>::max())) {
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    std::int64_t capacity;
  };

  bool BuildLevels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> frontier;
    level_[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int id : adjacency_[v]) {
        const Edge& e = edges_[id];
        if (e.capacity > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          frontier.push(e.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t Push(int v, int sink, std::int64_t limit) {
    if (v == sink) return limit;
    for (int& k = next_[v]; k < static_cast<int>(adjacency_[v].size()); ++k) {
      const int id = adjacency_[v][k];
      Edge& e = edges_[id];
      if (e.capacity <= 0 || level_[e.to] != level_[v] + 1) continue;
      const std::int64_t pushed = Push(e.to, sink, std::min(limit, e.capacity));
      if (pushed > 0) {
        e.capacity -= pushed;
        edges_[id ^ 1].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace

ExistenceVerdict CheckBetaExistence(const SimpleGraph& g,
                                    const std::vector<int>& tied,
                                    bool anchored) {
  const int n = g.size();
  const DegreeVector d = Degrees(g);
  // Blocks of vertices sharing one parameter; the anchored group (if any)
  // carries no constraint of its own.
  std::vector<std::int64_t> size, degree;
  std::vector<bool> in_group(n, false);
  std::int64_t pinned = 0;
  if (!tied.empty()) {
    const std::vector<int> group = NormalizeTiedSet(n, tied);
    for (int v : group) in_group[v] = true;
    if (anchored) {
      pinned = static_cast<std::int64_t>(group.size());
    } else {
      size.push_back(static_cast<std::int64_t>(group.size()));
      degree.push_back(0);
      for (int v : group) degree.back() += d[v];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!in_group[v]) {
      size.push_back(1);
      degree.push_back(d[v]);
    }
  }
  const int blocks = static_cast<int>(size.size());
  ExistenceVerdict verdict;
  if (blocks == 0) return verdict;

  // Each pair probability is confined to [1/K, 1 - 1/K] and everything is
  // scaled by K. Every cut condition is affine in 1/K with integer
  // coefficients bounded by 2 n^2, so this is feasible iff some open-cube
  // point reproduces the statistics.
  const std::int64_t scale = 2 * static_cast<std::int64_t>(n) * n + 2;
  const int source = 2 * blocks, sink = 2 * blocks + 1;
  MaxFlow flow(2 * blocks + 2);
  std::vector<std::int64_t> lower_out(blocks, 0);
  for (int b = 0; b < blocks; ++b) {
    for (int c = 0; c < blocks; ++c) {
      std::int64_t pairs = b == c ? size[b] * (size[b] - 1) : size[b] * size[c];
      if (b == c) pairs += size[b] * pinned;
      if (pairs == 0) continue;
      lower_out[b] += pairs;
      flow.AddEdge(b, blocks + c, pairs * (scale - 2));
    }
  }
  std::int64_t required = 0;
  for (int b = 0; b < blocks; ++b) {
    const std::int64_t supply = degree[b] * scale - lower_out[b];
    if (supply < 0) {
      verdict.exists = false;
      return verdict;
    }
    flow.AddEdge(source, b, supply);
    flow.AddEdge(blocks + b, sink, supply);
    required += supply;
  }
  verdict.exists = flow.Run(source, sink) == required;
  return verdict;
}

double Softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double BetaLogLikelihood(const SimpleGraph& g, std::span<const double> beta) {
  CheckDimension(g, beta);
  const DegreeVector d = Degrees(g);
  double value = 0.0;
  for (int i = 0; i < g.size(); ++i) value += beta[i] * d[i];
  for (int i = 0; i < g.size(); ++i) {
    for (int j = i + 1; j < g.size(); ++j) value -= Softplus(beta[i] + beta[j]);
  }
  return value;
}

std::vector<double> BetaExpectedDegrees(std::span<const double> beta) {
  const std::size_t n = beta.size();
  std::vector<double> expected(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = EdgeProbability(beta[i], beta[j]);
      expected[i] += p;
      expected[j] += p;
    }
  }
  return expected;
}

FitResult FitBetaMle(const SimpleGraph& g, const SolverOptions& options) {
  const int n = g.size();
  const DegreeVector d = Degrees(g);
  for (int i = 0; i < n; ++i) {
    if (d[i] == 0 || d[i] == n - 1) {
      ThrowNoMle("vertex " + std::to_string(i + 1) + " has boundary degree " +
                 std::to_string(d[i]));
    }
  }

  if (!CheckBetaExistence(g).exists) {
    ThrowNoMle("degree sequence lies on the boundary of the degree polytope");
  }

  const double tolerance = options.residual_scale * std::max(1, n - 1);
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  // merit x_i = e^beta_i; E d_i = x_i * sum_j 1 / (1/x_j + x_i).
  std::vector<double> merit(n), inverse(n), denom(n);
  for (int i = 0; i < n; ++i) merit[i] = d[i] / std::sqrt(total);
  StallMonitor monitor(options.stall_window);
  bool converged = false;
  int sweeps = 0;
  double residual = 0.0;
  while (true) {
    for (int i = 0; i < n; ++i) inverse[i] = 1.0 / merit[i];
    residual = 0.0;
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (inverse[j] + merit[i]);
      }
      denom[i] = sum;
      residual = std::max(residual, std::abs(d[i] - merit[i] * sum));
    }
    if (residual <= tolerance) {
      converged = true;
      break;
    }
    if (monitor.Stalled(residual)) ThrowNoMle("residual stalled");
    if (sweeps == options.max_iterations) break;
    ++sweeps;
    for (int i = 0; i < n; ++i) {
      merit[i] = d[i] / denom[i];
      CheckBound(merit[i], i, options);
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNotConverged,
                "no convergence after " + std::to_string(sweeps) +
                    " sweeps (residual " + std::to_string(residual) + ")");
  }

  FitResult fit;
  fit.beta.resize(n);
  for (int i = 0; i < n; ++i) fit.beta[i] = std::log(merit[i]);
  fit.iterations = sweeps;
  const std::vector<double> expected = BetaExpectedDegrees(fit.beta);
  for (int i = 0; i < n; ++i) {
    fit.residual = std::max(fit.residual, std::abs(d[i] - expected[i]));
  }
  fit.loglik = BetaLogLikelihood(g, fit.beta);
  return fit;
}

FitResult FitBetaRestricted(const SimpleGraph& g, const std::vector<int>& tied,
                            const SolverOptions& options,
                            std::optional<double> anchor) {
  const int n = g.size();
  const std::vector<int> group = NormalizeTiedSet(n, tied);
  const int r = static_cast<int>(group.size());
  const DegreeVector d = Degrees(g);
  std::vector<bool> in_group(n, false);
  for (int v : group) in_group[v] = true;
  std::vector<int> free;
  for (int v = 0; v < n; ++v) {
    if (!in_group[v]) free.push_back(v);
  }
  const int m = static_cast<int>(free.size());

  long long group_degree = 0;
  for (int v : group) group_degree += d[v];
  if (!anchor && (group_degree == 0 ||
                  group_degree == static_cast<long long>(r) * (n - 1))) {
    ThrowNoMle("tied group has boundary total degree");
  }
  for (int v : free) {
    if (d[v] == 0 || d[v] == n - 1) {
      ThrowNoMle("vertex " + std::to_string(v + 1) + " has boundary degree " +
                 std::to_string(d[v]));
    }
  }

  if (!CheckBetaExistence(g, group, anchor.has_value()).exists) {
    ThrowNoMle("reduced statistics lie on the boundary of their polytope");
  }

  const double tolerance = options.residual_scale * std::max(1, n - 1);
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  double shared =
      anchor ? std::exp(*anchor) : group_degree / (r * std::sqrt(total));
  std::vector<double> merit(m), inverse(m), free_part(m), denom(m);
  for (int a = 0; a < m; ++a) merit[a] = d[free[a]] / std::sqrt(total);

  // Expected group degree divided by the shared merit.
  auto group_denominator = [&]() {
    double sum = (r - 1) / (1.0 / shared + shared);
    for (int a = 0; a < m; ++a) sum += 1.0 / (inverse[a] + shared);
    return r * sum;
  };

  StallMonitor monitor(options.stall_window);
  bool converged = false;
  int sweeps = 0;
  double residual = 0.0;
  while (true) {
    for (int a = 0; a < m; ++a) inverse[a] = 1.0 / merit[a];
    for (int a = 0; a < m; ++a) {
      double sum = 0.0;
      for (int b = 0; b < m; ++b) {
        if (b != a) sum += 1.0 / (inverse[b] + merit[a]);
      }
      free_part[a] = sum;
    }
    const double group_denom = group_denominator();
    residual = anchor ? 0.0 : std::abs(group_degree - shared * group_denom);
    for (int a = 0; a < m; ++a) {
      denom[a] = free_part[a] + r / (1.0 / shared + merit[a]);
      residual = std::max(residual, std::abs(d[free[a]] - merit[a] * denom[a]));
    }
    if (residual <= tolerance) {
      converged = true;
      break;
    }
    if (monitor.Stalled(residual)) ThrowNoMle("residual stalled");
    if (sweeps == options.max_iterations) break;
    ++sweeps;
    // Scalar step for the shared value, then a sweep over the free
    // coordinates against the updated shared value.
    if (!anchor) {
      shared = group_degree / group_denom;
      CheckBound(shared, group.front(), options);
    }
    for (int a = 0; a < m; ++a) {
      const double den = free_part[a] + r / (1.0 / shared + merit[a]);
      merit[a] = d[free[a]] / den;
      CheckBound(merit[a], free[a], options);
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNotConverged,
                "no convergence after " + std::to_string(sweeps) +
                    " sweeps (residual " + std::to_string(residual) + ")");
  }

  FitResult fit;
  fit.beta.assign(n, anchor ? *anchor : std::log(shared));
  for (int a = 0; a < m; ++a) fit.beta[free[a]] = std::log(merit[a]);
  fit.iterations = sweeps;
  fit.residual = residual;
  fit.loglik = BetaLogLikelihood(g, fit.beta);
  return fit;
}

Eigen::MatrixXd ComputeBetaCovariance(std::span<const double> beta) {
  const int n = static_cast<int>(beta.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = EdgeProbability(beta[i], beta[j]);
      const double c = p * (1.0 - p);
      u(i, j) = u(j, i) = c;
      u(i, i) += c;
      u(j, j) += c;
    }
  }
  return u;
}

}  // namespace wilks
