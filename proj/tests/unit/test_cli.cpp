// Copyright 2026 The quac-sim Authors
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "quac/cli/cli.hpp"

namespace fs = std::filesystem;
using quac::cli::run;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("quac_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int invoke(std::vector<std::string> args, const fs::path& out_dir = {}) {
  std::ostringstream out, err;
  if (!out_dir.empty()) args.insert(args.begin(), {"--out", out_dir.string()});
  return run(args, out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

void expect_same_tree(const fs::path& a, const fs::path& b) {
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    const fs::path other = b / e.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
  }
  EXPECT_GT(files, 0u);
}

}  // namespace

TEST(Cli, StorageWritesStampedJson) {
  const auto dir = fresh_dir("storage");
  ASSERT_EQ(invoke({"model", "storage"}, dir), quac::cli::kExitOk);
  const auto j = load(dir / "storage.json");
  EXPECT_EQ(j["bits"], 1316);
  EXPECT_TRUE(j.contains("tool_version"));
  EXPECT_TRUE(j.contains("config_hash"));
  EXPECT_TRUE(j.contains("seed"));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"frobnicate"}), quac::cli::kExitUsage);
  EXPECT_EQ(invoke({"generate"}), quac::cli::kExitUsage);
  EXPECT_EQ(invoke({"model", "idle", "--fraction", "2"}, fresh_dir("idle")), quac::cli::kExitUsage);
  EXPECT_EQ(invoke({"--help"}), quac::cli::kExitOk);
}

TEST(Cli, DomainErrorsExitOne) {
  const auto dir = fresh_dir("trace");
  {
    std::ofstream t(dir / "bad.trace");
    t << "0 ACT 0 0 0\n2.5 PRE 0 0\n5 ACT 0 0 9\n";
  }
  EXPECT_EQ(invoke({"run-trace", "--trace", (dir / "bad.trace").string()}, dir), quac::cli::kExitDomain);
}

TEST(Cli, TraceQuacReportsFourRows) {
  const auto dir = fresh_dir("trace_ok");
  {
    std::ofstream t(dir / "quac.trace");
    t << "0 WRITE_ROW 0 0 20 0\n1 WRITE_ROW 0 0 21 1\n2 WRITE_ROW 0 0 22 1\n3 WRITE_ROW 0 0 23 1\n"
         "20 ACT 0 0 20\n22.5 PRE 0 0\n25 ACT 0 0 23\n45 READ_BLOCK 0 0 0\n";
  }
  ASSERT_EQ(invoke({"--segments", "64", "run-trace", "--trace", (dir / "quac.trace").string()}, dir), 0);
  EXPECT_TRUE(fs::exists(dir / "trace_result.json"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = fresh_dir("env");
  ::setenv(quac::cli::kOutDirEnv, dir.c_str(), 1);
  const int rc = invoke({"model", "storage", "--ranges", "1", "--row-bits", "17"});
  ::unsetenv(quac::cli::kOutDirEnv);
  ASSERT_EQ(rc, 0);
  EXPECT_EQ(load(dir / "storage.json")["bits"], 314);
}

TEST(Cli, CharacterizeIsByteIdenticalAcrossRunsAndThreads) {
  const auto a = fresh_dir("char_a"), b = fresh_dir("char_b");
  const std::vector<std::string> base = {"--segments", "64", "--seed", "5", "characterize", "--patterns",
                                         "0111,1011", "--trials", "50", "--count", "8", "--spatial", "--blocks"};
  auto with_threads = [&](const char* n) {
    auto v = base;
    v.insert(v.end(), {"--threads", n});
    return v;
  };
  ASSERT_EQ(invoke(with_threads("1"), a), 0);
  ASSERT_EQ(invoke(with_threads("3"), b), 0);
  expect_same_tree(a, b);
  const std::string csv = slurp(a / "patterns.csv");
  EXPECT_EQ(csv.rfind("# tool_version=", 0), 0u);
}

TEST(Cli, GenerateAndTestAreReproducible) {
  const auto a = fresh_dir("gen_a"), b = fresh_dir("gen_b");
  const std::vector<std::string> args = {"--segments", "64", "generate", "--bits", "20000", "--trials", "100",
                                         "--plan-segments", "8"};
  ASSERT_EQ(invoke(args, a), 0);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "4"});
  ASSERT_EQ(invoke(threaded, b), 0);
  expect_same_tree(a, b);
  EXPECT_EQ(fs::file_size(a / "bits.bin"), 2500u);
  ASSERT_EQ(invoke({"test", "--input", (a / "bits.bin").string(), "--length", "10000"}, a), 0);
  const auto stats = load(a / "stats.json");
  EXPECT_TRUE(stats.contains("config_hash"));
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = QUAC_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("--version"), 0);
  EXPECT_EQ(status("no-such-command"), 2);
  EXPECT_EQ(status("--out " + fresh_dir("bin").string() + " model storage --ranges 0"), 2);
}
