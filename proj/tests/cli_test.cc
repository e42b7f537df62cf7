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

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "doctest.h"

namespace wilks::cli {
namespace {

namespace fs = std::filesystem;

class Workspace {
 public:
  Workspace() {
    root_ = fs::temp_directory_path() /
            ("wilks_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(root_);
  }
  ~Workspace() { fs::remove_all(root_); }

  std::string Write(const std::string& name, const std::string& text) const {
    const fs::path path = root_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string Path(const std::string& name) const { return (root_ / name).string(); }

 private:
  fs::path root_;
};

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = RunCli(args, out, err);
  return {status, out.str(), err.str()};
}

std::map<std::string, std::string> ParseKv(const std::string& text) {
  std::map<std::string, std::string> values;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) values[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return values;
}

std::string ReadText(const std::string& path) {
  std::ifstream file(path);
  return std::string(std::istreambuf_iterator<char>(file), {});
}

void ExpectFailure(const Run& run, int status, const std::string& code) {
  CHECK(run.status == status);
  CHECK(run.out.empty());
  CHECK(run.err.rfind("error code=" + code + " exit=" + std::to_string(status) +
                          " message=",
                      0) == 0);
  CHECK(std::count(run.err.begin(), run.err.end(), '\n') == 1);
}

const Workspace& Files() {
  static const Workspace workspace;
  return workspace;
}

TEST_CASE("fit") {
  const std::string symmetric = Files().Write("sym.csv", "1,2,1,1\n1,3,1,1\n2,3,1,1\n");
  const Run table = Invoke({"fit", "--input", symmetric});
  REQUIRE(table.status == 0);
  CHECK(table.out.find("1       1      0.0000      1.000\n") != std::string::npos);
  CHECK(table.out.find("3       3      0.0000      1.000\n") != std::string::npos);

  const Run csv = Invoke({"fit", "--input", symmetric, "--format", "csv"});
  CHECK(csv.out == "vertex,label,beta,merit\n1,1,0,1\n2,2,0,1\n3,3,0,1\n");

  const std::string cycle =
      Files().Write("c5.csv", "1,2\n2,3\n3,4\n4,5\n5,1\n");
  const Run beta = Invoke({"fit", "--model", "beta", "--input", cycle, "--format", "kv"});
  REQUIRE(beta.status == 0);
  const auto kv = ParseKv(beta.out);
  std::istringstream values(kv.at("beta"));
  std::string token;
  while (std::getline(values, token, ',')) CHECK(std::abs(std::stod(token)) < 1e-9);
  CHECK(kv.at("existence") == "Exists");
}

TEST_CASE("fit with a game log, names and a reference") {
  const std::string games = Files().Write(
      "games.csv",
      "# winner,loser\nAnts,Bees\nBees,Ants\nAnts,Cats\nCats,Bees\nBees,Cats\n"
      "Cats,Ants\nAnts,Bees\n");
  const Run run = Invoke({"fit", "--input", games, "--input-format", "games",
                          "--reference", "Bees", "--format", "kv"});
  REQUIRE(run.status == 0);
  const auto kv = ParseKv(run.out);
  CHECK(kv.at("labels") == "Ants,Bees,Cats");
  CHECK(kv.at("reference") == "2");
  CHECK(kv.at("merit").find(",1,") != std::string::npos);

  const Run labels = Invoke({"fit", "--input", Files().Write("p.csv", "1,2,2,1\n"),
                             "--labels", Files().Write("names.txt", "North\nSouth\n"),
                             "--reference", "South"});
  REQUIRE(labels.status == 0);
  CHECK(labels.out.find("reference   South\n") != std::string::npos);
  CHECK(labels.out.find("North  0.6931      2.000\n") != std::string::npos);

  const LabeledComparisons parsed = ParseGameLog("b,a\na,b\nb,a\n");
  CHECK(parsed.labels == std::vector<std::string>{"a", "b"});
  CHECK(parsed.matrix.wins(1, 0) == 2);
  CHECK(parsed.matrix.wins(0, 1) == 1);
}

TEST_CASE("test") {
  const std::string symmetric = Files().Path("sym.csv");
  const Run composite =
      Invoke({"test", "--input", symmetric, "--tied", "1,2,3", "--format", "kv"});
  REQUIRE(composite.status == 0);
  const auto kv = ParseKv(composite.out);
  CHECK(std::abs(std::stod(kv.at("raw_lrt"))) < 1e-12);
  CHECK(kv.at("df") == "2");
  CHECK(kv.at("tied") == "1,2,3");

  const std::string null = Files().Write("null.txt", "# null\n0 0\n0\n");
  const Run simple = Invoke({"test", "--input", symmetric, "--null", null, "--format", "csv"});
  REQUIRE(simple.status == 0);
  CHECK(simple.out.rfind("model,null,n,r,loglik_full", 0) == 0);
  CHECK(simple.out.find("\nbt,simple,3,0,") != std::string::npos);

  ExpectFailure(Invoke({"test", "--input", symmetric, "--tied", "1"}), 5,
                "InvalidTiedSet");
  ExpectFailure(Invoke({"test", "--input", symmetric, "--tied", "1,9"}), 5,
                "InvalidTiedSet");
  ExpectFailure(Invoke({"test", "--input", symmetric}), 5, "InvalidArgument");
  ExpectFailure(Invoke({"test", "--input", symmetric, "--tied", "1,2", "--null", null}),
                5, "InvalidArgument");
  ExpectFailure(Invoke({"test", "--input", symmetric, "--tied", "1,2", "--anchor", "0"}),
                5, "InvalidArgument");

  const std::string kite = Files().Write(
      "kite.csv", "1,2\n2,3\n2,4\n3,4\n3,5\n4,5\n4,6\n5,6\n");
  const Run anchored = Invoke({"test", "--model", "beta", "--input", kite,
                               "--tied", "1,2", "--anchor", "0", "--format", "kv"});
  REQUIRE(anchored.status == 0);
  CHECK(std::abs(std::stod(ParseKv(anchored.out).at("loglik_null")) -
                 -9.0491198068493421) < 1e-8);
}

TEST_CASE("check") {
  const Run dominant = Invoke({"check", "--input", Files().Write("dom.csv", "1,2,3,0\n2,3,1,1\n")});
  REQUIRE(dominant.status == 0);
  CHECK(dominant.out.find("existence          NotExists\n") != std::string::npos);
  CHECK(dominant.out.find("witness_dominant   1\n") != std::string::npos);
  CHECK(dominant.out.find("witness_dominated  2,3\n") != std::string::npos);

  const Run complete = Invoke({"check", "--model", "beta", "--format", "kv", "--input",
                               Files().Write("k3.csv", "1,2\n1,3\n2,3\n")});
  REQUIRE(complete.status == 0);
  CHECK(ParseKv(complete.out).at("existence") == "NotExists");
  CHECK(ParseKv(complete.out).at("boundary_degree") == "1,2,3");

  const Run zero = Invoke({"check", "--input", Files().Path("sym.csv"), "--format", "kv",
                           "--beta", Files().Write("zero.txt", "0,0,0\n")});
  REQUIRE(zero.status == 0);
  CHECK(ParseKv(zero.out).at("max_merit_ratio") == "1");
  CHECK(ParseKv(zero.out).at("condition_at") == "file");

  const Run csv = Invoke({"check", "--input", Files().Path("sym.csv"), "--format", "csv"});
  CHECK(csv.out.rfind("key,value\nmodel,bt\n", 0) == 0);
}

TEST_CASE("error statuses") {
  ExpectFailure(Invoke({"fit", "--input", Files().Write("bad.csv", "1,2,x,1\n")}), 2,
                "MalformedRow");
  ExpectFailure(Invoke({"fit", "--input", Files().Write("dup.csv", "1,2,1,1\n2,1,1,1\n")}),
                2, "DuplicatePair");
  ExpectFailure(Invoke({"fit", "--model", "beta", "--input", Files().Write("loop.csv", "1,1\n")}),
                2, "SelfLoop");
  ExpectFailure(Invoke({"fit", "--input", Files().Path("missing.csv")}), 1, "IoError");
  ExpectFailure(Invoke({"fit", "--input", Files().Path("dom.csv")}), 3, "NoMleExists");
  const std::string ordered =
      Files().Write("ordered.csv", "1,2,2,1\n1,3,3,1\n2,3,1,2\n1,4,1,3\n2,4,2,2\n3,4,3,1\n");
  ExpectFailure(Invoke({"fit", "--input", ordered, "--max-iterations", "1"}), 4,
                "NotConverged");
  ExpectFailure(Invoke({"fit", "--input", ordered, "--format", "xml"}), 5, "InvalidArgument");
  ExpectFailure(Invoke({"fit", "--model", "beta", "--input", Files().Path("c5.csv"),
                        "--reference", "2"}),
                5, "InvalidArgument");
  ExpectFailure(Invoke({"simulate-qq", "--reps", "0"}), 5, "InvalidArgument");
  ExpectFailure(Invoke({"simulate-power", "--reps", "0", "--r", "4", "--n", "10"}), 5,
                "InvalidArgument");
  ExpectFailure(Invoke({}), 5, "InvalidArgument");
  CHECK(Invoke({"--help"}).status == 0);
  CHECK(Invoke({"fit", "--help"}).out.find("--reference") != std::string::npos);
}

TEST_CASE("simulate-qq") {
  const std::vector<std::string> args{"simulate-qq", "--model", "bt", "--n", "200",
                                      "--Ln", "0", "--reps", "1000", "--seed", "7"};
  const Run run = Invoke(args);
  REQUIRE(run.status == 0);
  CHECK(run.out.rfind("k,theoretical,empirical\n", 0) == 0);
  CHECK(std::count(run.out.begin(), run.out.end(), '\n') == 1001);

  std::vector<std::string> summary_args = args;
  summary_args.insert(summary_args.end(), {"--output", Files().Path("qq.csv"), "--plot",
                                           Files().Path("qq.svg"), "--threads", "2"});
  const Run summary = Invoke(summary_args);
  REQUIRE(summary.status == 0);
  CHECK(ReadText(Files().Path("qq.csv")) == run.out);
  const auto kv = ParseKv(summary.out);
  CHECK(std::stod(kv.at("ks_distance")) < 0.06);
  CHECK(kv.at("failed") == "0");
  const std::string svg = ReadText(Files().Path("qq.svg"));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 1000);
  CHECK(svg.find("<line") != std::string::npos);

  const Run composite = Invoke({"simulate-qq", "--model", "beta", "--n", "40", "--null",
                                "composite", "--reps", "50", "--format", "kv"});
  REQUIRE(composite.status == 0);
  CHECK(ParseKv(composite.out).at("null") == "composite");
}

TEST_CASE("simulate-power") {
  const Run run = Invoke({"simulate-power", "--model", "beta", "--n", "50", "--Ln", "0",
                          "--r", "20", "--c", "0.8"});
  REQUIRE(run.status == 0);
  std::istringstream lines(run.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "model,n,Ln,r,c,rejections,failures,rate");
  CHECK(std::stod(row.substr(row.rfind(',') + 1)) >= 0.99);

  const std::vector<std::string> grid{"simulate-power", "--n", "20,30", "--r", "6",
                                      "--c", "0,1", "--reps", "40", "--seed", "3"};
  const Run first = Invoke(grid);
  std::vector<std::string> threaded = grid;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const Run second = Invoke(threaded);
  REQUIRE(first.status == 0);
  CHECK(first.out == second.out);
  CHECK(std::count(first.out.begin(), first.out.end(), '\n') == 5);

  // One cell fails too often, the other succeeds: a warning row, not an abort.
  const Run mixed = Invoke({"simulate-power", "--model", "beta", "--n", "50", "--Ln",
                            "0", "--r", "20", "--c", "0.4,12", "--reps", "60"});
  REQUIRE(mixed.status == 0);
  CHECK(mixed.out.find("TooManyFailures") != std::string::npos);
  ExpectFailure(Invoke({"simulate-power", "--model", "beta", "--n", "50", "--r", "20",
                        "--c", "12", "--reps", "60"}),
                7, "TooManyFailures");
}

TEST_CASE("parameter vectors") {
  CHECK(ParseVector("# comment\n1, 2.5\n-3e-1\t4\n") ==
        std::vector<double>{1, 2.5, -0.3, 4});
  CHECK(ParseVector("") == std::vector<double>{});
}

}  // namespace
}  // namespace wilks::cli
