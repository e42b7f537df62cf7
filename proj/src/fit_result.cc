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

#include "wilks/fit_result.h"

#include <algorithm>
#include <sstream>

#include "wilks/format.h"

namespace wilks {
namespace {

std::string JoinLabels(const std::vector<int>& vertices) {
  std::string out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vertices[i] + 1);
  }
  return out;
}

}  // namespace

std::vector<int> NormalizeTiedSet(int n, const std::vector<int>& tied) {
  std::vector<int> sorted = tied;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidTiedSet, "tied set repeats a vertex");
  }
  if (sorted.size() < 2) {
    throw Error(ErrorCode::kInvalidTiedSet,
                "tied set needs at least two vertices");
  }
  if (sorted.front() < 0 || sorted.back() >= n) {
    throw Error(ErrorCode::kInvalidTiedSet, "tied set names unknown vertex");
  }
  return sorted;
}

std::string ToKeyValue(const FitResult& fit) {
  std::ostringstream out;
  out << "beta=" << JoinExact(fit.beta) << '\n';
  out << "loglik=" << FormatExact(fit.loglik) << '\n';
  out << "iterations=" << fit.iterations << '\n';
  out << "residual=" << FormatExact(fit.residual) << '\n';
  out << "existence=" << (fit.existence.exists ? "Exists" : "NotExists")
      << '\n';
  if (!fit.existence.exists) {
    out << "witness_dominant=" << JoinLabels(fit.existence.dominant) << '\n';
    out << "witness_dominated=" << JoinLabels(fit.existence.dominated) << '\n';
  }
  if (fit.reference >= 0) out << "reference=" << fit.reference + 1 << '\n';
  return out.str();
}

}  // namespace wilks
