// Copyright 2026 The plateau-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "plateau/cli.hpp"
#include "plateau/errors.hpp"
#include "plateau/random.hpp"
#include "plateau/serialize.hpp"

namespace plateau {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("plateau_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(PLATEAU_LAB_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

TEST(ParseConfig, FlagsPopulateConfig) {
  auto cfg = parse_config(
      {"variance-sweep", "--family", "local-m1", "--cost", "global", "--n", "2..5", "--samples", "100000", "--seed", "7"});
  EXPECT_EQ(cfg.command, Command::VarianceSweep);
  EXPECT_EQ(cfg.n_min, 2);
  EXPECT_EQ(cfg.n_max, 5);
  EXPECT_EQ(cfg.family, Family::LocalM1Toy);
  EXPECT_EQ(cfg.costs, std::vector<CostKind>{CostKind::Global});
  EXPECT_EQ(cfg.samples, 100000u);
  EXPECT_EQ(cfg.seed, 7u);
}

TEST(ParseConfig, MissingSamplesIsUsageError) {
  EXPECT_THROW(parse_config({"variance-sweep", "--n", "2..3"}), UsageError);
  std::string err;
  EXPECT_EQ(run({"variance-sweep", "--n", "2..3"}, nullptr, &err), 2);
  EXPECT_NE(err.find("samples"), std::string::npos);
  EXPECT_EQ(std::count(err.begin(), err.end(), '\n'), 1);
}

TEST(ParseConfig, ResourceGuard) {
  EXPECT_THROW(parse_config({"variance-sweep", "--family", "global-deep", "--n", "8..9"}), ResourceGuardError);
  EXPECT_EQ(run({"variance-sweep", "--family", "global-deep", "--n", "8..9"}), 3);
  EXPECT_EQ(run({"toy-model", "--n", "2..8"}), 3);
}

TEST(ParseConfig, JsonFileAndOverrides) {
  fs::path p = scratch("cfg.json");
  std::ofstream(p) << R"({"n_min": 2, "n_max": 4, "family": "global-deep", "samples": 500, "seed": 3, "cost": "both"})";
  auto cfg = parse_config({"variance-sweep", "--config", p.string(), "--seed", "9"});
  EXPECT_EQ(cfg.n_max, 4);
  EXPECT_EQ(cfg.family, Family::GlobalDeep);
  EXPECT_EQ(cfg.costs.size(), 2u);
  EXPECT_EQ(cfg.samples, 500u);
  EXPECT_EQ(cfg.seed, 9u);
}

TEST(ParseConfig, JsonRejections) {
  fs::path inverted = scratch("inverted.json");
  std::ofstream(inverted) << R"({"n_min": 5, "n_max": 2, "samples": 100})";
  EXPECT_EQ(run({"variance-sweep", "--config", inverted.string()}), 2);
  fs::path unknown = scratch("unknown.json");
  std::ofstream(unknown) << R"({"n_min": 2, "learning_rate": 0.1})";
  std::string err;
  EXPECT_EQ(run({"toy-model", "--config", unknown.string()}, nullptr, &err), 2);
  EXPECT_NE(err.find("learning_rate"), std::string::npos);
  fs::path broken = scratch("broken.json");
  std::ofstream(broken) << "{";
  EXPECT_EQ(run({"toy-model", "--config", broken.string()}), 2);
}

TEST(ParseConfig, BadValues) {
  EXPECT_THROW(parse_config({"variance-sweep", "--samples", "lots"}), UsageError);
  EXPECT_THROW(parse_config({"variance-sweep", "--samples", "50"}), UsageError);
  EXPECT_THROW(parse_config({"variance-sweep", "--samples", "500", "--family", "ring"}), UsageError);
  EXPECT_THROW(parse_config({"variance-sweep", "--samples", "500", "--scheme", "MatrixFlow"}), UsageError);
  EXPECT_THROW(parse_config({"variance-sweep", "--samples", "500", "--family", "local-m2", "--n", "3"}), UsageError);
  EXPECT_THROW(parse_config({"variance-sweep", "--samples", "500", "--format", "xml"}), UsageError);
  EXPECT_THROW(parse_config({"variance-sweep", "--samples", "500", "--workers", "-2"}), UsageError);
  EXPECT_THROW(parse_config({"toy-model", "--family", "global-deep"}), UsageError);
  EXPECT_THROW(parse_config({"frobnicate"}), UsageError);
  EXPECT_THROW(parse_config({}), UsageError);
  EXPECT_EQ(parse_config({"variance-sweep", "--samples", "500", "--workers", "auto"}).workers, 0);
}

TEST(ParseConfig, HelpExitsZero) {
  std::string out;
  EXPECT_EQ(run({"--help"}, &out), 0);
  EXPECT_NE(out.find("toy-model"), std::string::npos);
  EXPECT_EQ(run({"variance-sweep", "--help"}, &out), 0);
  EXPECT_NE(out.find("--samples"), std::string::npos);
}

TEST(Dispatch, ToyModelCsvHasExactColumn) {
  std::string out;
  ASSERT_EQ(run({"toy-model", "--n", "2..3", "--samples", "200", "--seed", "1"}, &out), 0);
  EXPECT_EQ(out.rfind("# plateau-lab ", 0), 0u);
  EXPECT_NE(out.find("\"seed\":1"), std::string::npos);
  EXPECT_NE(out.find(",0.046875,,1,\n"), std::string::npos);
  EXPECT_NE(out.find(",0.03125,,1,\n"), std::string::npos);
  EXPECT_NE(out.find(",0.017578125,,1,\n"), std::string::npos);
}

TEST(Dispatch, GlobalDeepHasBoundNoExact) {
  std::string out;
  ASSERT_EQ(run({"variance-sweep", "--family", "global-deep", "--n", "2", "--samples", "100"}, &out), 0);
  EXPECT_NE(out.find("\n2,global-deep,global,RPQC,100,"), std::string::npos);
  EXPECT_NE(out.find(",,0.036857070870676314,0,\n"), std::string::npos);
}

TEST(Dispatch, JsonMirrorsRows) {
  std::string out;
  ASSERT_EQ(run({"toy-model", "--n", "2", "--samples", "100", "--format", "json"}, &out), 0);
  auto doc = nlohmann::json::parse(out);
  EXPECT_EQ(doc["meta"]["version"], PLATEAU_LAB_VERSION);
  EXPECT_EQ(doc["meta"]["config"]["samples"], 100);
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][1]["cost_kind"], "local");
  EXPECT_TRUE(doc["rows"][0]["bound_value"].is_null());
}

TEST(Dispatch, BoundTable) {
  std::string out;
  ASSERT_EQ(run({"bound-table", "--n", "1..2"}, &out), 0);
  EXPECT_NE(out.find("\n1,0.125,0.125,"), std::string::npos);
  EXPECT_NE(out.find(",2.1333333333333333,2.1333333333333333\n"), std::string::npos);
}

TEST(Dispatch, VerifyGradientsPasses) {
  std::string out;
  EXPECT_EQ(run({"verify-gradients", "--seed", "5"}, &out), 0);
  EXPECT_NE(out.find("parameter-shift-vs-central-fd"), std::string::npos);
  EXPECT_EQ(out.find("FAIL"), std::string::npos);
}

TEST(Dispatch, VerifyGradientsReadsInputDocument) {
  RngStream rng(4, 0);
  nlohmann::json doc{{"network", to_json(toy_network({0.4, 1.2}))},
                     {"cost", to_json(CostSpec{CostKind::Local, {sample_product_training_pair(2, 2, rng)}})}};
  fs::path p = scratch("net.json");
  std::ofstream(p) << doc.dump();
  std::string out;
  EXPECT_EQ(run({"verify-gradients", "--input", p.string()}, &out), 0);
  EXPECT_NE(out.find("2 rotation parameters"), std::string::npos);
  EXPECT_EQ(run({"verify-gradients", "--input", scratch("missing.json").string()}), 2);
}

TEST(Dispatch, VerifyMomentsTable) {
  std::string out;
  EXPECT_EQ(run({"verify-moments", "--samples", "2000", "--seed", "1"}, &out), 0);
  EXPECT_NE(out.find("commutator-average-zero"), std::string::npos);
  EXPECT_NE(out.find("bitstring-decomposition"), std::string::npos);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("variance-sweep --family global-deep --n 8..9"), 3);
  EXPECT_EQ(run_binary("variance-sweep --n 2"), 2);
  EXPECT_EQ(run_binary("bound-table --n 1..3"), 0);
}

TEST(Binary, ByteIdenticalAcrossWorkerCounts) {
  fs::path a = scratch("w1.csv"), b = scratch("w3.csv"), c = scratch("w1b.csv");
  const std::string base = "variance-sweep --family global-deep --cost both --n 2..3 --samples 300 --seed 11 --out ";
  ASSERT_EQ(run_binary(base + a.string() + " --workers 1"), 0);
  ASSERT_EQ(run_binary(base + b.string() + " --workers 3"), 0);
  ASSERT_EQ(run_binary(base + c.string() + " --workers 1"), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(c));
  EXPECT_FALSE(fs::exists(a.string() + ".partial"));
  EXPECT_FALSE(fs::exists(a.string() + ".tmp"));
}

TEST(Output, AtomicReplace) {
  fs::path p = scratch("atomic.txt");
  write_atomically(p.string(), "old\n");
  write_atomically(p.string(), "new\n");
  EXPECT_EQ(slurp(p), "new\n");
  EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
  EXPECT_THROW(write_atomically((scratch("no_such_dir") / "x" / "y.txt").string(), "z"), std::runtime_error);
}

TEST(Output, ConfigOmitsWorkers) {
  auto cfg = parse_config({"toy-model", "--workers", "4"});
  EXPECT_FALSE(config_to_json(cfg).contains("workers"));
}

}  // namespace
}  // namespace plateau
