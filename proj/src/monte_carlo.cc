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

#include "wilks/monte_carlo.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "wilks/beta_model.h"
#include "wilks/bt_model.h"
#include "wilks/errors.h"
#include "wilks/format.h"
#include "wilks/normal.h"

namespace wilks {
namespace {

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Outcome {
  bool ok = false;
  double z = 0.0;
  ErrorCode failure = ErrorCode::kNoMleExists;
};

struct Replicates {
  std::vector<Outcome> outcomes;
  int failed = 0;
};

// Evaluates `run(i)` for every replicate index. Only solver failures are
// absorbed; anything else propagates. Stops early (and throws) once more
// than half the replicates have failed, which the full run would also do.
Replicates RunReplicates(const SimConfig& config,
                         const std::function<Outcome(int)>& run) {
  const int count = config.replicates;
  std::vector<Outcome> outcomes(count);
  std::atomic<int> failed{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::atomic<bool> has_error{false};
  auto worker = [&](int offset, int stride) {
    for (int i = offset; i < count; i += stride) {
      if (abort.load() || has_error.load()) return;
      try {
        outcomes[i] = run(i);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoMleExists &&
            e.code() != ErrorCode::kNotConverged &&
            e.code() != ErrorCode::kDiverged) {
          if (!has_error.exchange(true)) error = std::current_exception();
          return;
        }
        outcomes[i] = {false, 0.0, e.code()};
      }
      if (!outcomes[i].ok && 2 * (failed.fetch_add(1) + 1) > count) {
        abort = true;
      }
    }
  };
  const int threads = std::clamp(config.threads, 1, std::max(1, count));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (auto& thread : pool) thread.join();
  }
  if (has_error) std::rethrow_exception(error);
  if (abort) {
    throw Error(ErrorCode::kTooManyFailures,
                "more than half of " + std::to_string(count) +
                    " replicates had no usable MLE");
  }
  return {std::move(outcomes), failed.load()};
}

std::vector<int> FirstVertices(int r) {
  std::vector<int> tied(r);
  std::iota(tied.begin(), tied.end(), 0);
  return tied;
}

Outcome CompositeOutcome(const SimConfig& config,
                         const std::vector<double>& truth,
                         const std::vector<int>& tied, std::uint64_t seed) {
  if (config.model == Model::kBradleyTerry) {
    const ComparisonMatrix m = SampleBt(config.trials, truth, seed);
    return {true, BtCompositeTest(m, tied, config.solver).z};
  }
  const SimpleGraph g = SampleBeta(truth, seed);
  std::optional<double> anchor;
  if (config.anchor_beta_null) anchor = 0.0;
  return {true, BetaCompositeTest(g, tied, config.solver, anchor).z};
}

int CompositeGroupSize(const SimConfig& config) {
  return config.r > 0 ? config.r : config.n / 2;
}

}  // namespace

GrowthSpec GrowthSpec::Parse(std::string_view text) {
  if (text == "0" || text == "zero") return Of(Kind::kZero);
  if (text == "log_log_n" || text == "loglogn") return Of(Kind::kLogLogN);
  if (text == "sqrt_log_n" || text == "sqrtlogn") return Of(Kind::kSqrtLogN);
  if (text == "log_n" || text == "logn") return Of(Kind::kLogN);
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown L_n specification '" + std::string(text) + "'");
  }
  return Value(value);
}

double GrowthSpec::Resolve(int n) const {
  const double log_n = std::log(static_cast<double>(n));
  switch (kind_) {
    case Kind::kZero: return 0.0;
    case Kind::kLogLogN: return std::log(log_n);
    case Kind::kSqrtLogN: return std::sqrt(log_n);
    case Kind::kLogN: return log_n;
    case Kind::kValue: return value_;
  }
  return 0.0;
}

std::string GrowthSpec::Label() const {
  switch (kind_) {
    case Kind::kZero: return "0";
    case Kind::kLogLogN: return "log_log_n";
    case Kind::kSqrtLogN: return "sqrt_log_n";
    case Kind::kLogN: return "log_n";
    case Kind::kValue: {
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%g", value_);
      return buffer;
    }
  }
  return "";
}

void SimConfig::Validate() const {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidArgument, why);
  };
  if (n < 2) fail("n must be >= 2");
  if (trials < 1) fail("trials per pair must be >= 1");
  if (replicates < 1) fail("replicates must be >= 1");
  if (r != 0 && (r < 2 || r > n)) fail("r must satisfy 2 <= r <= n");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (threads < 1) fail("threads must be >= 1");
  if (!std::isfinite(c)) fail("c must be finite");
}

std::vector<double> NullBetas(int n, const GrowthSpec& growth,
                              std::optional<int> composite_r) {
  const double top = growth.Resolve(n);
  std::vector<double> beta(n);
  for (int i = 0; i < n; ++i) beta[i] = i * top / (n - 1);
  if (composite_r) {
    std::fill(beta.begin(), beta.begin() + std::min(*composite_r, n), 0.0);
  }
  return beta;
}

std::vector<double> PowerBetas(int n, int r, double c,
                               const GrowthSpec& growth) {
  if (r < 1 || r > n) {
    throw Error(ErrorCode::kInvalidArgument, "r must satisfy 1 <= r <= n");
  }
  const double top = growth.Resolve(n);
  std::vector<double> beta(n);
  for (int i = 1; i <= n; ++i) {
    beta[i - 1] = i <= r ? i * c / r : (i - r) * top / n;
  }
  return beta;
}

std::uint64_t ReplicateSeed(std::uint64_t base_seed, std::uint64_t index) {
  return SplitMix64(SplitMix64(base_seed) ^ index);
}

ComparisonMatrix SampleBt(int trials, std::span<const double> beta,
                          std::uint64_t seed) {
  const int n = static_cast<int>(beta.size());
  UniformSource uniform(seed);
  std::vector<int> upper(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = 1.0 / (1.0 + std::exp(beta[j] - beta[i]));
      int wins = 0;
      for (int t = 0; t < trials; ++t) wins += uniform.Next() < p ? 1 : 0;
      upper[static_cast<std::size_t>(i) * n + j] = wins;
    }
  }
  return ComparisonMatrix::Uniform(n, trials, upper);
}

SimpleGraph SampleBeta(std::span<const double> beta, std::uint64_t seed) {
  const int n = static_cast<int>(beta.size());
  UniformSource uniform(seed);
  std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = 1.0 / (1.0 + std::exp(-(beta[i] + beta[j])));
      if (uniform.Next() < p) {
        adjacency[static_cast<std::size_t>(i) * n + j] = 1;
        adjacency[static_cast<std::size_t>(j) * n + i] = 1;
      }
    }
  }
  return SimpleGraph(n, std::move(adjacency));
}

QqSummary RunQqExperiment(const SimConfig& config, NullKind kind) {
  config.Validate();
  std::function<Outcome(int)> run;
  std::vector<double> truth;
  std::vector<int> tied;
  if (kind == NullKind::kSimple) {
    truth = NullBetas(config.n, config.growth);
    run = [&](int i) -> Outcome {
      const std::uint64_t seed = ReplicateSeed(config.base_seed, i);
      if (config.model == Model::kBradleyTerry) {
        const ComparisonMatrix m = SampleBt(config.trials, truth, seed);
        return {true, BtSimpleTest(m, truth, config.solver).z};
      }
      const SimpleGraph g = SampleBeta(truth, seed);
      return {true, BetaSimpleTest(g, truth, config.solver).z};
    };
  } else {
    const int r = CompositeGroupSize(config);
    if (r < 2) {
      throw Error(ErrorCode::kInvalidArgument, "composite null needs r >= 2");
    }
    truth = NullBetas(config.n, config.growth, r);
    tied = FirstVertices(r);
    run = [&](int i) {
      return CompositeOutcome(config, truth, tied,
                              ReplicateSeed(config.base_seed, i));
    };
  }

  const Replicates result = RunReplicates(config, run);
  QqSummary summary;
  summary.replicates = config.replicates;
  summary.failed = result.failed;
  std::vector<double> z;
  for (const Outcome& outcome : result.outcomes) {
    if (outcome.ok) {
      z.push_back(outcome.z);
    } else {
      ++summary.failure_reasons[std::string(ErrorCodeName(outcome.failure))];
    }
  }
  std::sort(z.begin(), z.end());
  const int size = static_cast<int>(z.size());
  summary.pairs.reserve(size);
  for (int k = 1; k <= size; ++k) {
    summary.pairs.emplace_back(NormalQuantile((k - 0.5) / size), z[k - 1]);
  }
  summary.ks_distance = KsDistance(z);
  return summary;
}

PowerRow RunPowerCell(const SimConfig& config) {
  config.Validate();
  if (config.r < 2) {
    throw Error(ErrorCode::kInvalidArgument, "power runs need r >= 2");
  }
  const std::vector<double> truth =
      PowerBetas(config.n, config.r, config.c, config.growth);
  const std::vector<int> tied = FirstVertices(config.r);
  const Replicates result = RunReplicates(config, [&](int i) {
    return CompositeOutcome(config, truth, tied,
                            ReplicateSeed(config.base_seed, i));
  });
  PowerRow row;
  row.model = config.model;
  row.n = config.n;
  row.growth_label = config.growth.Label();
  row.r = config.r;
  row.c = config.c;
  row.failures = result.failed;
  for (const Outcome& outcome : result.outcomes) {
    if (!outcome.ok) continue;
    ++row.successes;
    if (Rejects(outcome.z, config.alpha, config.tail)) ++row.rejections;
  }
  row.rate = static_cast<double>(row.rejections) / row.successes;
  return row;
}

std::vector<PowerRow> RunPowerExperiment(std::span<const SimConfig> grid) {
  std::vector<PowerRow> rows;
  for (const SimConfig& config : grid) {
    try {
      rows.push_back(RunPowerCell(config));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTooManyFailures) throw;
      PowerRow row;
      row.model = config.model;
      row.n = config.n;
      row.growth_label = config.growth.Label();
      row.r = config.r;
      row.c = config.c;
      row.rate = std::nan("");
      row.too_many_failures = true;
      rows.push_back(row);
    }
  }
  return rows;
}

double KsDistance(std::span<const double> samples) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptySample, "KS distance of an empty sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double size = static_cast<double>(sorted.size());
  double distance = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double cdf = NormalCdf(sorted[k]);
    distance = std::max({distance, (k + 1) / size - cdf, cdf - k / size});
  }
  return distance;
}

std::string QqToCsv(const QqSummary& summary) {
  std::ostringstream out;
  out << "k,theoretical,empirical\n";
  for (std::size_t k = 0; k < summary.pairs.size(); ++k) {
    out << k + 1 << ',' << FormatExact(summary.pairs[k].first) << ','
        << FormatExact(summary.pairs[k].second) << '\n';
  }
  return out.str();
}

std::string PowerToCsv(std::span<const PowerRow> rows) {
  std::ostringstream out;
  out << "model,n,Ln,r,c,rejections,failures,rate\n";
  for (const PowerRow& row : rows) {
    out << ModelName(row.model) << ',' << row.n << ',' << row.growth_label
        << ',' << row.r << ',' << FormatExact(row.c) << ',' << row.rejections
        << ',' << row.failures << ','
        << (row.too_many_failures ? std::string("TooManyFailures")
                                  : FormatExact(row.rate))
        << '\n';
  }
  return out.str();
}

}  // namespace wilks
