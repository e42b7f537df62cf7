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

// Input structures for paired-comparison and undirected-graph data, their
// CSV encodings, and the structural MLE-existence check for paired
// comparisons.
//
// Vertex labels are 1-based in files and 0-based everywhere in memory.

#ifndef WILKS_COMPARISON_DATA_H_
#define WILKS_COMPARISON_DATA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wilks {

// Out-degrees (paired comparisons) or degrees (graphs), one per vertex.
using DegreeVector = std::vector<int>;

// Directed win counts d_ij between n subjects. The number of trials for a
// pair is k_ij = d_ij + d_ji, so the per-pair trial constraint holds by
// construction. Immutable once built.
class ComparisonMatrix {
 public:
  // `wins` is row-major with wins[i * n + j] = d_ij. Throws
  // ErrorCode::kInvalidArgument for n < 2, negative counts or a nonzero
  // diagonal.
  ComparisonMatrix(int n, std::vector<int> wins);

  // Every pair compared `trials` times; d_ij taken from the upper triangle
  // of `upper_wins` (only entries with i < j are read).
  static ComparisonMatrix Uniform(int n, int trials,
                                  const std::vector<int>& upper_wins);

  int size() const { return n_; }
  int wins(int i, int j) const { return wins_[Index(i, j)]; }
  int trials(int i, int j) const { return wins(i, j) + wins(j, i); }
  // max_{i != j} k_ij.
  int max_trials() const;
  // Sum over unordered pairs of k_ij.
  long long total_trials() const;
  const std::vector<int>& win_matrix() const { return wins_; }

  bool operator==(const ComparisonMatrix& other) const = default;

 private:
  std::size_t Index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_;
  std::vector<int> wins_;
};

// Undirected simple graph on n vertices stored as a dense 0/1 adjacency.
class SimpleGraph {
 public:
  // Throws ErrorCode::kInvalidArgument on n < 2, an asymmetric matrix,
  // entries outside {0,1} or a nonzero diagonal.
  SimpleGraph(int n, std::vector<std::uint8_t> adjacency);

  // 0-based edge list. Throws kSelfLoop, kDuplicateEdge or
  // kVertexOutOfRange.
  static SimpleGraph FromEdges(int n,
                               const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }
  bool has_edge(int i, int j) const {
    return adjacency_[static_cast<std::size_t>(i) * n_ + j] != 0;
  }
  int edge_count() const;
  const std::vector<std::uint8_t>& adjacency() const { return adjacency_; }

  bool operator==(const SimpleGraph& other) const = default;

 private:
  int n_;
  std::vector<std::uint8_t> adjacency_;
};

DegreeVector OutDegrees(const ComparisonMatrix& m);
DegreeVector Degrees(const SimpleGraph& g);

// Rows `i,j,wins_ij,wins_ji`. When `n` is omitted the vertex count is the
// largest label seen. Unlisted pairs have zero trials.
ComparisonMatrix ParseBtCsv(std::string_view text,
                            std::optional<int> n = std::nullopt);
// Rows `i,j`, one per undirected edge.
SimpleGraph ParseGraphCsv(std::string_view text,
                          std::optional<int> n = std::nullopt);

// Writes every unordered pair (including zero-trial pairs) so the vertex
// count survives a round trip.
std::string ToCsv(const ComparisonMatrix& m);
std::string ToCsv(const SimpleGraph& g);

struct ExistenceVerdict {
  bool exists = true;
  // Populated when !exists: nobody in `dominated` has beaten anybody in
  // `dominant`. 0-based, sorted.
  std::vector<int> dominant;
  std::vector<int> dominated;
};

// The Bradley-Terry MLE exists (and is unique) iff the digraph with an arc
// i -> j whenever d_ij > 0 is strongly connected.
ExistenceVerdict CheckFordCondition(const ComparisonMatrix& m);

// Strongly connected components of the positive-win digraph, listed in
// reverse topological order of the condensation (the last one is a source).
std::vector<std::vector<int>> WinComponents(const ComparisonMatrix& m);

}  // namespace wilks

#endif  // WILKS_COMPARISON_DATA_H_
