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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "wilks/beta_model.h"
#include "wilks/bt_model.h"
#include "wilks/fit_result.h"
#include "wilks/format.h"
#include "wilks/wilks_stats.h"

namespace wilks::cli {
namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

struct Options {
  std::string model = "bt";
  std::string input;
  std::string input_format = "pairs";
  int n = 0;
  std::string labels_path;
  std::string reference;
  std::string format;
  std::string output;
  std::string null_path;
  std::string tied;
  std::optional<double> anchor;
  std::string beta_path;
  int max_iterations = SolverOptions().max_iterations;

  std::string n_list = "50";
  std::string growth_list = "0";
  std::string r_list;
  std::string c_list = "0";
  std::string null_kind = "simple";
  std::string null_mode = "anchored";
  std::string tail = "two-sided";
  std::string plot;
  int replicates = 1000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  int threads = 1;
  int trials = 1;
};

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream{std::string(text)};
  while (std::getline(stream, item, ',')) items.push_back(Trim(item));
  return items;
}

std::string ReadFile(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIoError, "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(file), {});
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

Model ParseModel(const std::string& text) {
  if (text == "bt") return Model::kBradleyTerry;
  if (text == "beta") return Model::kBeta;
  throw Error(ErrorCode::kInvalidArgument, "unknown model '" + text + "'");
}

int ParseInt(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument,
              "invalid " + std::string(what) + " '" + text + "'");
}

double ParseDouble(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && std::isfinite(value)) return value;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument,
              "invalid " + std::string(what) + " '" + text + "'");
}

// Loaded input for fit, test and check.
struct Dataset {
  Model model = Model::kBradleyTerry;
  std::optional<ComparisonMatrix> comparisons;
  std::optional<SimpleGraph> graph;
  std::vector<std::string> labels;

  int size() const { return comparisons ? comparisons->size() : graph->size(); }
};

Dataset LoadDataset(const Options& options) {
  if (options.input.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--input is required");
  }
  Dataset data;
  data.model = ParseModel(options.model);
  const std::string text = ReadFile(options.input);
  const std::optional<int> n =
      options.n > 0 ? std::optional<int>(options.n) : std::nullopt;
  if (data.model == Model::kBradleyTerry) {
    if (options.input_format == "games") {
      LabeledComparisons parsed = ParseGameLog(text);
      data.comparisons = std::move(parsed.matrix);
      data.labels = std::move(parsed.labels);
    } else if (options.input_format == "pairs") {
      data.comparisons = ParseBtCsv(text, n);
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown input format '" + options.input_format + "'");
    }
  } else {
    if (options.input_format != "pairs") {
      throw Error(ErrorCode::kInvalidArgument,
                  "the beta model reads edge lists only");
    }
    data.graph = ParseGraphCsv(text, n);
  }
  if (!options.labels_path.empty()) {
    data.labels.clear();
    std::istringstream lines(ReadFile(options.labels_path));
    std::string line;
    while (std::getline(lines, line)) {
      line = Trim(line);
      if (!line.empty() && line[0] != '#') data.labels.push_back(line);
    }
    if (static_cast<int>(data.labels.size()) != data.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "label file has " + std::to_string(data.labels.size()) +
                      " names for " + std::to_string(data.size()) +
                      " vertices");
    }
  }
  if (data.labels.empty()) {
    for (int i = 1; i <= data.size(); ++i) data.labels.push_back(std::to_string(i));
  }
  return data;
}

// A 1-based label number or a vertex name.
int ResolveVertex(const Dataset& data, const std::string& token) {
  const auto named = std::find(data.labels.begin(), data.labels.end(), token);
  if (named != data.labels.end()) {
    return static_cast<int>(named - data.labels.begin());
  }
  const int label = ParseInt(token, "vertex");
  if (label < 1 || label > data.size()) {
    throw Error(ErrorCode::kInvalidTiedSet,
                "vertex " + token + " is not in 1.." + std::to_string(data.size()));
  }
  return label - 1;
}

SolverOptions MakeSolverOptions(const Options& options, const Dataset& data) {
  SolverOptions solver;
  solver.max_iterations = options.max_iterations;
  if (!options.reference.empty()) {
    if (data.model != Model::kBradleyTerry) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--reference applies to the bt model only");
    }
    solver.reference = ResolveVertex(data, options.reference);
  }
  return solver;
}

std::string RenderRows(const Rows& rows, const std::string& format) {
  std::ostringstream out;
  if (format == "kv") {
    for (const auto& [key, value] : rows) out << key << '=' << value << '\n';
  } else if (format == "csv") {
    out << "key,value\n";
    for (const auto& [key, value] : rows) out << key << ',' << value << '\n';
  } else {
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.first.size());
    for (const auto& [key, value] : rows) {
      out << key << std::string(width + 2 - key.size(), ' ') << value << '\n';
    }
  }
  return out.str();
}

std::string JoinLabels(const Dataset& data, const std::vector<int>& vertices) {
  std::string text;
  for (int v : vertices) {
    if (!text.empty()) text += ',';
    text += data.labels[v];
  }
  return text;
}

void CheckFormat(const std::string& format) {
  if (format != "table" && format != "csv" && format != "kv") {
    throw Error(ErrorCode::kInvalidArgument, "unknown format '" + format + "'");
  }
}

void Emit(const Options& options, std::ostream& out, const std::string& text) {
  if (options.output.empty()) {
    out << text;
  } else {
    WriteFile(options.output, text);
  }
}

std::string RenderFit(const Dataset& data, const FitResult& fit,
                      const std::string& format) {
  const bool bt = data.model == Model::kBradleyTerry;
  std::vector<double> merit(fit.beta.size());
  for (std::size_t i = 0; i < merit.size(); ++i) merit[i] = std::exp(fit.beta[i]);
  std::ostringstream out;
  if (format == "kv") {
    out << "model=" << ModelName(data.model) << '\n' << ToKeyValue(fit);
    if (bt) out << "merit=" << JoinExact(merit) << '\n';
    out << "labels=";
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
      out << (i ? "," : "") << data.labels[i];
    }
    out << '\n';
  } else if (format == "csv") {
    out << (bt ? "vertex,label,beta,merit\n" : "vertex,label,beta\n");
    for (std::size_t i = 0; i < fit.beta.size(); ++i) {
      out << i + 1 << ',' << data.labels[i] << ',' << FormatExact(fit.beta[i]);
      if (bt) out << ',' << FormatExact(merit[i]);
      out << '\n';
    }
  } else {
    Rows rows{{"model", std::string(ModelName(data.model))},
              {"n", std::to_string(fit.beta.size())},
              {"loglik", FormatFixed(fit.loglik, 6)},
              {"iterations", std::to_string(fit.iterations)},
              {"residual", FormatExact(fit.residual)}};
    if (bt) rows.emplace_back("reference", data.labels[fit.reference]);
    out << RenderRows(rows, "table") << '\n';
    std::size_t width = 5;
    for (const auto& label : data.labels) width = std::max(width, label.size());
    out << "vertex  " << "label" << std::string(width - 3, ' ') << "beta";
    out << (bt ? "        merit\n" : "\n");
    for (std::size_t i = 0; i < fit.beta.size(); ++i) {
      std::string index = std::to_string(i + 1);
      std::string beta = FormatFixed(fit.beta[i], 4);
      out << index << std::string(8 - std::min<std::size_t>(7, index.size()), ' ')
          << data.labels[i] << std::string(width + 2 - data.labels[i].size(), ' ')
          << beta;
      if (bt) {
        out << std::string(12 - std::min<std::size_t>(11, beta.size()), ' ')
            << FormatFixed(merit[i], 3);
      }
      out << '\n';
    }
  }
  return out.str();
}

int CommandFit(const Options& options, std::ostream& out) {
  const std::string format = options.format.empty() ? "table" : options.format;
  CheckFormat(format);
  const Dataset data = LoadDataset(options);
  const SolverOptions solver = MakeSolverOptions(options, data);
  const FitResult fit = data.comparisons ? FitBtMle(*data.comparisons, solver)
                                         : FitBetaMle(*data.graph, solver);
  Emit(options, out, RenderFit(data, fit, format));
  return kExitOk;
}

int CommandTest(const Options& options, std::ostream& out) {
  const std::string format = options.format.empty() ? "table" : options.format;
  CheckFormat(format);
  if (options.null_path.empty() == options.tied.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --null and --tied");
  }
  const Dataset data = LoadDataset(options);
  const SolverOptions solver = MakeSolverOptions(options, data);
  if (options.anchor && (options.tied.empty() || data.graph == std::nullopt)) {
    throw Error(ErrorCode::kInvalidArgument,
                "--anchor applies to beta-model tied tests only");
  }
  TestReport report;
  std::vector<int> tied;
  if (!options.null_path.empty()) {
    const std::vector<double> null_beta = ParseVector(ReadFile(options.null_path));
    report = data.comparisons ? BtSimpleTest(*data.comparisons, null_beta, solver)
                              : BetaSimpleTest(*data.graph, null_beta, solver);
  } else {
    for (const std::string& token : SplitList(options.tied)) {
      tied.push_back(ResolveVertex(data, token));
    }
    report = data.comparisons
                 ? BtCompositeTest(*data.comparisons, tied, solver)
                 : BetaCompositeTest(*data.graph, tied, solver, options.anchor);
  }

  std::ostringstream text;
  if (format == "kv") {
    text << ToKeyValue(report);
    if (!tied.empty()) text << "tied=" << JoinLabels(data, NormalizeTiedSet(data.size(), tied)) << '\n';
  } else if (format == "csv") {
    text << "model,null,n,r,loglik_full,loglik_null,raw_lrt,df,z,p_value,"
            "p_two_sided\n"
         << ModelName(report.model) << ',' << NullKindName(report.null_kind)
         << ',' << report.n << ',' << report.r << ','
         << FormatExact(report.loglik_full) << ','
         << FormatExact(report.loglik_null) << ',' << FormatExact(report.raw_lrt)
         << ',' << FormatExact(report.df) << ',' << FormatExact(report.z) << ','
         << FormatExact(report.p_value) << ',' << FormatExact(report.p_two_sided)
         << '\n';
  } else {
    Rows rows{{"model", std::string(ModelName(report.model))},
              {"null", std::string(NullKindName(report.null_kind))},
              {"n", std::to_string(report.n)}};
    if (!tied.empty()) {
      rows.emplace_back("r", std::to_string(report.r));
      rows.emplace_back("tied", JoinLabels(data, NormalizeTiedSet(data.size(), tied)));
    }
    rows.insert(rows.end(),
                {{"loglik_full", FormatFixed(report.loglik_full, 6)},
                 {"loglik_null", FormatFixed(report.loglik_null, 6)},
                 {"raw_lrt", FormatFixed(report.raw_lrt, 4)},
                 {"df", FormatExact(report.df)},
                 {"z", FormatFixed(report.z, 4)},
                 {"p_value", FormatFixed(report.p_value, 4)},
                 {"p_two_sided", FormatFixed(report.p_two_sided, 4)}});
    text << RenderRows(rows, "table");
  }
  Emit(options, out, text.str());
  return kExitOk;
}

int CommandCheck(const Options& options, std::ostream& out) {
  const std::string format = options.format.empty() ? "table" : options.format;
  CheckFormat(format);
  const Dataset data = LoadDataset(options);
  Rows rows{{"model", std::string(ModelName(data.model))},
            {"n", std::to_string(data.size())}};
  ExistenceVerdict verdict;
  if (data.comparisons) {
    verdict = CheckFordCondition(*data.comparisons);
  } else {
    verdict = CheckBetaExistence(*data.graph);
    const DegreeVector d = Degrees(*data.graph);
    std::vector<int> boundary;
    for (int i = 0; i < data.size(); ++i) {
      if (d[i] == 0 || d[i] == data.size() - 1) boundary.push_back(i);
    }
    if (!boundary.empty()) rows.emplace_back("boundary_degree", JoinLabels(data, boundary));
  }
  rows.emplace_back("existence", verdict.exists ? "Exists" : "NotExists");
  if (!verdict.exists && !verdict.dominant.empty()) {
    rows.emplace_back("witness_dominant", JoinLabels(data, verdict.dominant));
    rows.emplace_back("witness_dominated", JoinLabels(data, verdict.dominated));
  }

  std::optional<std::vector<double>> beta;
  if (!options.beta_path.empty()) {
    beta = ParseVector(ReadFile(options.beta_path));
    if (static_cast<int>(beta->size()) != data.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "parameter file has " + std::to_string(beta->size()) +
                      " entries for " + std::to_string(data.size()) + " vertices");
    }
    rows.emplace_back("condition_at", "file");
  } else if (verdict.exists) {
    const SolverOptions solver = MakeSolverOptions(options, data);
    beta = data.comparisons ? FitBtMle(*data.comparisons, solver).beta
                            : FitBetaMle(*data.graph, solver).beta;
    rows.emplace_back("condition_at", "mle");
  }
  if (beta) {
    const ConditionReport report = ComputeConditionReport(*beta);
    rows.insert(rows.end(),
                {{"max_merit_ratio", FormatExact(report.max_merit_ratio)},
                 {"bt_spread", FormatExact(report.bt_spread)},
                 {"max_abs_beta", FormatExact(report.max_abs_beta)},
                 {"beta_spread", FormatExact(report.beta_spread)},
                 {"bt_ratio_rate", FormatExact(report.bt_ratio_rate)},
                 {"bt_spread_rate", FormatExact(report.bt_spread_rate)},
                 {"beta_bound_rate", FormatExact(report.beta_bound_rate)},
                 {"beta_spread_rate", FormatExact(report.beta_spread_rate)}});
  }
  Emit(options, out, RenderRows(rows, format));
  return kExitOk;
}

SimConfig BaseConfig(const Options& options) {
  SimConfig config;
  config.model = ParseModel(options.model);
  config.trials = options.trials;
  config.replicates = options.replicates;
  config.base_seed = options.seed;
  config.alpha = options.alpha;
  config.threads = options.threads;
  config.solver.max_iterations = options.max_iterations;
  if (options.tail == "two-sided") {
    config.tail = Tail::kTwoSided;
  } else if (options.tail == "upper") {
    config.tail = Tail::kUpper;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown tail '" + options.tail + "'");
  }
  if (options.null_mode == "anchored") {
    config.anchor_beta_null = true;
  } else if (options.null_mode == "free") {
    config.anchor_beta_null = false;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown null mode '" + options.null_mode + "'");
  }
  return config;
}

Rows QqSummaryRows(const SimConfig& config, const QqSummary& summary,
                   NullKind kind) {
  Rows rows{{"model", std::string(ModelName(config.model))},
            {"null", std::string(NullKindName(kind))},
            {"n", std::to_string(config.n)},
            {"Ln", config.growth.Label()},
            {"replicates", std::to_string(summary.replicates)},
            {"failed", std::to_string(summary.failed)},
            {"ks_distance", FormatExact(summary.ks_distance)}};
  for (const auto& [reason, count] : summary.failure_reasons) {
    rows.emplace_back("failed_" + reason, std::to_string(count));
  }
  return rows;
}

int CommandSimulateQq(const Options& options, std::ostream& out) {
  const std::string format = options.format.empty() ? "csv" : options.format;
  CheckFormat(format);
  SimConfig config = BaseConfig(options);
  config.n = ParseInt(options.n_list, "--n");
  config.growth = GrowthSpec::Parse(options.growth_list);
  if (!options.r_list.empty()) config.r = ParseInt(options.r_list, "--r");
  NullKind kind;
  if (options.null_kind == "simple") {
    kind = NullKind::kSimple;
  } else if (options.null_kind == "composite") {
    kind = NullKind::kComposite;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown null kind '" + options.null_kind + "'");
  }
  const QqSummary summary = RunQqExperiment(config, kind);
  const std::string csv = QqToCsv(summary);
  const Rows rows = QqSummaryRows(config, summary, kind);
  if (!options.output.empty()) {
    WriteFile(options.output, csv);
    out << RenderRows(rows, format == "csv" ? "kv" : format);
  } else if (format == "csv") {
    out << csv;
  } else {
    out << RenderRows(rows, format);
  }
  if (!options.plot.empty()) {
    const std::string title = std::string(ModelName(config.model)) + " " +
                              std::string(NullKindName(kind)) + ", n=" +
                              std::to_string(config.n) + ", Ln=" +
                              config.growth.Label();
    WriteFile(options.plot, QqPlotSvg(summary, title));
  }
  return kExitOk;
}

int CommandSimulatePower(const Options& options, std::ostream& out) {
  const std::string format = options.format.empty() ? "csv" : options.format;
  CheckFormat(format);
  const SimConfig base = BaseConfig(options);
  if (options.r_list.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--r is required");
  }
  std::vector<SimConfig> grid;
  for (const std::string& n : SplitList(options.n_list)) {
    for (const std::string& growth : SplitList(options.growth_list)) {
      for (const std::string& r : SplitList(options.r_list)) {
        for (const std::string& c : SplitList(options.c_list)) {
          SimConfig config = base;
          config.n = ParseInt(n, "--n");
          config.growth = GrowthSpec::Parse(growth);
          config.r = ParseInt(r, "--r");
          config.c = ParseDouble(c, "--c");
          config.Validate();
          if (config.r < 2) {
            throw Error(ErrorCode::kInvalidArgument, "--r must be at least 2");
          }
          grid.push_back(config);
        }
      }
    }
  }
  const std::vector<PowerRow> rows = RunPowerExperiment(grid);
  bool any_success = false;
  for (const PowerRow& row : rows) any_success |= !row.too_many_failures;
  if (!any_success) {
    throw Error(ErrorCode::kTooManyFailures,
                "every cell had more than half of its replicates fail");
  }
  std::string text;
  if (format == "csv") {
    text = PowerToCsv(rows);
  } else {
    std::ostringstream table;
    for (const PowerRow& row : rows) {
      const std::string prefix = std::string(ModelName(row.model)) +
                                 " n=" + std::to_string(row.n) + " Ln=" +
                                 row.growth_label + " r=" +
                                 std::to_string(row.r) + " c=" +
                                 FormatExact(row.c);
      const std::string rate =
          row.too_many_failures ? "TooManyFailures" : FormatFixed(row.rate, 3);
      if (format == "kv") {
        table << prefix << " rate=" << rate << " failures=" << row.failures << '\n';
      } else {
        table << prefix << std::string(prefix.size() < 40 ? 40 - prefix.size() : 1, ' ')
              << rate << "  (failures " << row.failures << ")\n";
      }
    }
    text = table.str();
  }
  Emit(options, out, text);
  return kExitOk;
}

void AddModel(CLI::App* app, Options& options) {
  app->add_option("--model", options.model, "bt | beta")
      ->check(CLI::IsMember({"bt", "beta"}));
}

void AddOutput(CLI::App* app, Options& options, std::string_view formats) {
  app->add_option("--format", options.format, std::string(formats))
      ->check(CLI::IsMember({"table", "csv", "kv"}));
  app->add_option("--output", options.output, "write results to this file");
}

void AddInput(CLI::App* app, Options& options) {
  AddModel(app, options);
  app->add_option("--input", options.input, "data file, or - for stdin")
      ->required();
  app->add_option("--input-format", options.input_format,
                  "pairs (i,j,wins_ij,wins_ji) | games (winner,loser); bt only")
      ->check(CLI::IsMember({"pairs", "games"}));
  app->add_option("--n", options.n, "vertex count (default: largest label)");
  app->add_option("--labels", options.labels_path, "one vertex name per line");
  app->add_option("--max-iterations", options.max_iterations,
                  "solver sweep limit");
}

void AddSimulation(CLI::App* app, Options& options) {
  AddModel(app, options);
  app->add_option("--Ln", options.growth_list,
                  "0 | log_log_n | sqrt_log_n | log_n | <number>");
  app->add_option("--reps", options.replicates, "replicates per cell");
  app->add_option("--seed", options.seed, "base seed");
  app->add_option("--K", options.trials, "games per pair (bt)");
  app->add_option("--threads", options.threads, "worker threads");
  app->add_option("--null-mode", options.null_mode,
                  "anchored | free: beta-model composite null value")
      ->check(CLI::IsMember({"anchored", "free"}));
  app->add_option("--max-iterations", options.max_iterations,
                  "solver sweep limit");
}

std::string OneLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

int Fail(std::ostream& err, ErrorCode code, const std::string& message) {
  const int status = ExitStatusFor(code);
  err << "error code=" << ErrorCodeName(code) << " exit=" << status
      << " message=" << OneLine(message) << '\n';
  return status;
}

}  // namespace

int ExitStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRow:
    case ErrorCode::kDuplicatePair:
    case ErrorCode::kVertexOutOfRange:
    case ErrorCode::kSelfLoop:
    case ErrorCode::kDuplicateEdge:
      return kExitParse;
    case ErrorCode::kNoMleExists:
      return kExitNoMle;
    case ErrorCode::kNotConverged:
      return kExitNotConverged;
    case ErrorCode::kDiverged:
      return kExitDiverged;
    case ErrorCode::kTooManyFailures:
      return kExitTooManyFailures;
    case ErrorCode::kNonpositiveVariance:
    case ErrorCode::kSingularCovariance:
    case ErrorCode::kEmptySample:
      return kExitNumerical;
    case ErrorCode::kIoError:
      return kExitIo;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kInvalidTiedSet:
    case ErrorCode::kInvalidArgument:
      return kExitInvalidArguments;
  }
  return kExitInvalidArguments;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options options;
  CLI::App app{"Likelihood-ratio tests for Bradley-Terry and beta models",
               "wilks"};
  app.require_subcommand(1);

  CLI::App* fit = app.add_subcommand("fit", "maximum likelihood fit");
  AddInput(fit, options);
  AddOutput(fit, options, "table | csv | kv");
  fit->add_option("--reference", options.reference,
                  "bt identification vertex, by label number or name");

  CLI::App* test = app.add_subcommand("test", "normalized likelihood-ratio test");
  AddInput(test, options);
  AddOutput(test, options, "table | csv | kv");
  test->add_option("--reference", options.reference,
                   "bt identification vertex, by label number or name");
  CLI::Option* null_option =
      test->add_option("--null", options.null_path, "simple null parameter file");
  CLI::Option* tied_option =
      test->add_option("--tied", options.tied, "composite null: i,j,... share one value");
  null_option->excludes(tied_option);
  test->add_option("--anchor", options.anchor,
                   "beta model: fix the shared value of the tied group");

  CLI::App* check = app.add_subcommand("check", "MLE existence and condition quantities");
  AddInput(check, options);
  AddOutput(check, options, "table | csv | kv");
  check->add_option("--beta", options.beta_path,
                    "parameter file for the condition quantities");

  CLI::App* qq = app.add_subcommand("simulate-qq", "QQ experiment under the null");
  AddSimulation(qq, options);
  AddOutput(qq, options, "csv (pairs) | table | kv (summary)");
  qq->add_option("--n", options.n_list, "vertex count");
  qq->add_option("--null", options.null_kind, "simple | composite")
      ->check(CLI::IsMember({"simple", "composite"}));
  qq->add_option("--r", options.r_list, "tied-group size (default n/2)");
  qq->add_option("--plot", options.plot, "write an SVG QQ plot");

  CLI::App* power = app.add_subcommand("simulate-power", "power of the tied-group test");
  AddSimulation(power, options);
  AddOutput(power, options, "csv | table | kv");
  power->add_option("--n", options.n_list, "vertex counts, comma separated");
  power->add_option("--r", options.r_list, "tied-group sizes, comma separated");
  power->add_option("--c", options.c_list, "alternative slopes, comma separated");
  power->add_option("--alpha", options.alpha, "nominal level");
  power->add_option("--tail", options.tail, "two-sided | upper")
      ->check(CLI::IsMember({"two-sided", "upper"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    return Fail(err, ErrorCode::kInvalidArgument, e.what());
  }

  try {
    if (fit->parsed()) return CommandFit(options, out);
    if (test->parsed()) return CommandTest(options, out);
    if (check->parsed()) return CommandCheck(options, out);
    if (qq->parsed()) return CommandSimulateQq(options, out);
    return CommandSimulatePower(options, out);
  } catch (const Error& e) {
    return Fail(err, e.code(), e.what());
  }
}

LabeledComparisons ParseGameLog(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> games;
  std::set<std::string> names;
  std::istringstream lines{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = SplitList(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty() ||
        fields[0] == fields[1]) {
      throw Error(ErrorCode::kMalformedRow,
                  "line " + std::to_string(number) + ": expected winner,loser");
    }
    games.emplace_back(fields[0], fields[1]);
    names.insert(fields[0]);
    names.insert(fields[1]);
  }
  if (names.size() < 2) {
    throw Error(ErrorCode::kMalformedRow, "a game log needs at least two teams");
  }
  const std::vector<std::string> labels(names.begin(), names.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    index[labels[i]] = static_cast<int>(i);
  }
  const int n = static_cast<int>(labels.size());
  std::vector<int> wins(n * n, 0);
  for (const auto& [winner, loser] : games) ++wins[index[winner] * n + index[loser]];
  return {ComparisonMatrix(n, std::move(wins)), labels};
}

std::vector<double> ParseVector(std::string_view text) {
  std::vector<double> values;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) values.push_back(ParseDouble(token, "parameter"));
  }
  return values;
}

std::string QqPlotSvg(const QqSummary& summary, std::string_view title) {
  constexpr double kSize = 480.0, kMargin = 56.0;
  double lo = -3.0, hi = 3.0;
  for (const auto& [x, y] : summary.pairs) {
    lo = std::min({lo, x, y});
    hi = std::max({hi, x, y});
  }
  const double pad = 0.04 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double span = kSize - 2 * kMargin;
  auto px = [&](double v) { return kMargin + (v - lo) / (hi - lo) * span; };
  auto py = [&](double v) { return kSize - kMargin - (v - lo) / (hi - lo) * span; };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' '
      << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kSize / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n"
      << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << span << "\" height=\"" << span
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int tick = static_cast<int>(std::ceil(lo)); tick <= hi; ++tick) {
    svg << "<text x=\"" << FormatFixed(px(tick), 2) << "\" y=\""
        << kSize - kMargin + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << tick << "</text>\n"
        << "<text x=\"" << kMargin - 8 << "\" y=\"" << FormatFixed(py(tick) + 4, 2)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick << "</text>\n";
  }
  svg << "<line x1=\"" << FormatFixed(px(lo), 2) << "\" y1=\""
      << FormatFixed(py(lo), 2) << "\" x2=\"" << FormatFixed(px(hi), 2)
      << "\" y2=\"" << FormatFixed(py(hi), 2)
      << "\" stroke=\"gray\" stroke-width=\"1.5\"/>\n";
  for (const auto& [x, y] : summary.pairs) {
    svg << "<circle cx=\"" << FormatFixed(px(x), 2) << "\" cy=\""
        << FormatFixed(py(y), 2) << "\" r=\"2\" fill=\"none\" stroke=\"black\"/>\n";
  }
  svg << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">Theoretical quantiles</text>\n"
      << "<text x=\"16\" y=\"" << kSize / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 "
      << kSize / 2 << ")\">Empirical quantiles</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace wilks::cli
