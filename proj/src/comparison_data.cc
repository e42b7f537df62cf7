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

#include "wilks/comparison_data.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "wilks/errors.h"

namespace wilks {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits `text` into data lines, skipping blanks and `#` comments. Each entry
// carries its 1-based line number for error messages.
std::vector<std::pair<int, std::vector<std::string_view>>> DataRows(
    std::string_view text) {
  std::vector<std::pair<int, std::vector<std::string_view>>> rows;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    while (true) {
      const auto comma = line.find(',');
      fields.push_back(Trim(line.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    rows.emplace_back(line_no, std::move(fields));
  }
  return rows;
}

std::string AtLine(int line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

long long ParseInteger(std::string_view field, int line_no) {
  long long value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kMalformedRow,
                AtLine(line_no) + "not an integer: '" + std::string(field) +
                    "'");
  }
  return value;
}

int ParseLabel(std::string_view field, int line_no) {
  const long long label = ParseInteger(field, line_no);
  if (label < 1 || label > 1'000'000) {
    throw Error(ErrorCode::kVertexOutOfRange,
                AtLine(line_no) + "vertex label " + std::to_string(label) +
                    " out of range");
  }
  return static_cast<int>(label);
}

int ResolveVertexCount(std::optional<int> n, int max_label) {
  if (n) {
    if (*n < 2) {
      throw Error(ErrorCode::kInvalidArgument, "vertex count must be >= 2");
    }
    if (max_label > *n) {
      throw Error(ErrorCode::kVertexOutOfRange,
                  "vertex label " + std::to_string(max_label) +
                      " exceeds vertex count " + std::to_string(*n));
    }
    return *n;
  }
  if (max_label < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "input names fewer than two vertices");
  }
  return max_label;
}

}  // namespace

ComparisonMatrix::ComparisonMatrix(int n, std::vector<int> wins)
    : n_(n), wins_(std::move(wins)) {
  if (n_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "vertex count must be >= 2");
  }
  if (wins_.size() != static_cast<std::size_t>(n_) * n_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "win matrix must have n*n entries");
  }
  for (int i = 0; i < n_; ++i) {
    if (wins_[Index(i, i)] != 0) {
      throw Error(ErrorCode::kInvalidArgument, "nonzero diagonal win count");
    }
  }
  if (std::any_of(wins_.begin(), wins_.end(), [](int w) { return w < 0; })) {
    throw Error(ErrorCode::kInvalidArgument, "negative win count");
  }
}

ComparisonMatrix ComparisonMatrix::Uniform(int n, int trials,
                                           const std::vector<int>& upper_wins) {
  if (n < 2 || upper_wins.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "upper win matrix must have n*n entries");
  }
  std::vector<int> wins(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int w = upper_wins[static_cast<std::size_t>(i) * n + j];
      if (w < 0 || w > trials) {
        throw Error(ErrorCode::kInvalidArgument,
                    "win count outside [0, trials]");
      }
      wins[static_cast<std::size_t>(i) * n + j] = w;
      wins[static_cast<std::size_t>(j) * n + i] = trials - w;
    }
  }
  return ComparisonMatrix(n, std::move(wins));
}

int ComparisonMatrix::max_trials() const {
  int most = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) most = std::max(most, trials(i, j));
  }
  return most;
}

long long ComparisonMatrix::total_trials() const {
  long long total = 0;
  for (int w : wins_) total += w;
  return total;
}

SimpleGraph::SimpleGraph(int n, std::vector<std::uint8_t> adjacency)
    : n_(n), adjacency_(std::move(adjacency)) {
  if (n_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "vertex count must be >= 2");
  }
  if (adjacency_.size() != static_cast<std::size_t>(n_) * n_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "adjacency must have n*n entries");
  }
  for (int i = 0; i < n_; ++i) {
    if (has_edge(i, i)) {
      throw Error(ErrorCode::kInvalidArgument, "nonzero adjacency diagonal");
    }
    for (int j = 0; j < n_; ++j) {
      const auto a = adjacency_[static_cast<std::size_t>(i) * n_ + j];
      if (a > 1 || a != adjacency_[static_cast<std::size_t>(j) * n_ + i]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "adjacency must be symmetric 0/1");
      }
    }
  }
}

SimpleGraph SimpleGraph::FromEdges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "vertex count must be >= 2");
  }
  std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw Error(ErrorCode::kVertexOutOfRange, "edge endpoint out of range");
    }
    if (i == j) {
      throw Error(ErrorCode::kSelfLoop,
                  "self loop at vertex " + std::to_string(i + 1));
    }
    auto& cell = adjacency[static_cast<std::size_t>(i) * n + j];
    if (cell) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "duplicate edge " + std::to_string(i + 1) + "," +
                      std::to_string(j + 1));
    }
    cell = 1;
    adjacency[static_cast<std::size_t>(j) * n + i] = 1;
  }
  return SimpleGraph(n, std::move(adjacency));
}

int SimpleGraph::edge_count() const {
  int twice = 0;
  for (auto a : adjacency_) twice += a;
  return twice / 2;
}

DegreeVector OutDegrees(const ComparisonMatrix& m) {
  DegreeVector d(m.size(), 0);
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) d[i] += m.wins(i, j);
  }
  return d;
}

DegreeVector Degrees(const SimpleGraph& g) {
  DegreeVector d(g.size(), 0);
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) d[i] += g.has_edge(i, j) ? 1 : 0;
  }
  return d;
}

ComparisonMatrix ParseBtCsv(std::string_view text, std::optional<int> n) {
  struct Row {
    int i, j;
    long long wins_ij, wins_ji;
  };
  std::vector<Row> parsed;
  std::set<std::pair<int, int>> seen;
  int max_label = 0;
  for (const auto& [line_no, fields] : DataRows(text)) {
    if (fields.size() != 4) {
      throw Error(ErrorCode::kMalformedRow,
                  AtLine(line_no) + "expected i,j,wins_ij,wins_ji");
    }
    const int i = ParseLabel(fields[0], line_no);
    const int j = ParseLabel(fields[1], line_no);
    const long long wij = ParseInteger(fields[2], line_no);
    const long long wji = ParseInteger(fields[3], line_no);
    if (wij < 0 || wji < 0 || wij > 1'000'000'000 || wji > 1'000'000'000) {
      throw Error(ErrorCode::kMalformedRow,
                  AtLine(line_no) + "win counts must be nonnegative");
    }
    if (i == j) {
      throw Error(ErrorCode::kMalformedRow,
                  AtLine(line_no) + "a subject cannot be compared with itself");
    }
    if (!seen.insert(std::minmax(i, j)).second) {
      throw Error(ErrorCode::kDuplicatePair,
                  AtLine(line_no) + "pair " + std::to_string(i) + "," +
                      std::to_string(j) + " listed twice");
    }
    max_label = std::max({max_label, i, j});
    parsed.push_back({i - 1, j - 1, wij, wji});
  }
  const int size = ResolveVertexCount(n, max_label);
  std::vector<int> wins(static_cast<std::size_t>(size) * size, 0);
  for (const Row& row : parsed) {
    wins[static_cast<std::size_t>(row.i) * size + row.j] =
        static_cast<int>(row.wins_ij);
    wins[static_cast<std::size_t>(row.j) * size + row.i] =
        static_cast<int>(row.wins_ji);
  }
  return ComparisonMatrix(size, std::move(wins));
}

SimpleGraph ParseGraphCsv(std::string_view text, std::optional<int> n) {
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  int max_label = 0;
  for (const auto& [line_no, fields] : DataRows(text)) {
    if (fields.size() != 2) {
      throw Error(ErrorCode::kMalformedRow, AtLine(line_no) + "expected i,j");
    }
    const int i = ParseLabel(fields[0], line_no);
    const int j = ParseLabel(fields[1], line_no);
    if (i == j) {
      throw Error(ErrorCode::kSelfLoop,
                  AtLine(line_no) + "self loop at vertex " + std::to_string(i));
    }
    if (!seen.insert(std::minmax(i, j)).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  AtLine(line_no) + "edge " + std::to_string(i) + "," +
                      std::to_string(j) + " listed twice");
    }
    max_label = std::max({max_label, i, j});
    edges.emplace_back(i - 1, j - 1);
  }
  return SimpleGraph::FromEdges(ResolveVertexCount(n, max_label), edges);
}

std::string ToCsv(const ComparisonMatrix& m) {
  std::ostringstream out;
  out << "# i,j,wins_ij,wins_ji\n";
  for (int i = 0; i < m.size(); ++i) {
    for (int j = i + 1; j < m.size(); ++j) {
      out << i + 1 << ',' << j + 1 << ',' << m.wins(i, j) << ','
          << m.wins(j, i) << '\n';
    }
  }
  return out.str();
}

std::string ToCsv(const SimpleGraph& g) {
  std::ostringstream out;
  out << "# i,j\n";
  for (int i = 0; i < g.size(); ++i) {
    for (int j = i + 1; j < g.size(); ++j) {
      if (g.has_edge(i, j)) out << i + 1 << ',' << j + 1 << '\n';
    }
  }
  return out.str();
}

std::vector<std::vector<int>> WinComponents(const ComparisonMatrix& m) {
  // Iterative Tarjan.
  const int n = m.size();
  constexpr int kUnvisited = -1;
  std::vector<int> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::pair<int, int>> frames;  // (vertex, next neighbour)
  std::vector<std::vector<int>> components;
  int counter = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      bool descended = false;
      while (next < n) {
        const int w = next++;
        if (w == v || m.wins(v, w) == 0) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

ExistenceVerdict CheckFordCondition(const ComparisonMatrix& m) {
  auto components = WinComponents(m);
  ExistenceVerdict verdict;
  if (components.size() == 1) return verdict;
  // Tarjan emits sinks first, so the last component has no incoming arcs:
  // nobody outside it ever beat anybody inside it.
  verdict.exists = false;
  verdict.dominant = components.back();
  std::vector<bool> in_dominant(m.size(), false);
  for (int v : verdict.dominant) in_dominant[v] = true;
  for (int v = 0; v < m.size(); ++v) {
    if (!in_dominant[v]) verdict.dominated.push_back(v);
  }
  return verdict;
}

}  // namespace wilks
