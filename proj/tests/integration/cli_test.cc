// Copyright 2026 The Formality Spectrum Authors.
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

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

#include "formality/records.h"
#include "test_support.h"

namespace formality {
namespace {

using testing::FixturePath;
using testing::TempDir;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  const std::string cmd = std::string(FORMALITY_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

TEST(CliTest, ClassifyExemplar) {
  const CliRun r = Cli("classify --text \"LOL that was sooo weird. idk what just happened but omg O_O\"");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("0 (Informal)", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("netspeak"), std::string::npos);
}

TEST(CliTest, ClassifyWritesJson) {
  TempDir dir;
  const CliRun r = Cli("classify --input " + Quote(FixturePath("corpus.txt")) + " --out " +
                    Quote(dir / "labels.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(ReadText(dir / "labels.json"));
  ASSERT_EQ(j.size(), 10u);
  EXPECT_EQ(j[0]["label"], 1);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("").code, 1);
  EXPECT_EQ(Cli("classify --bogus").code, 1);
  EXPECT_EQ(Cli("classify").code, 1);
  EXPECT_EQ(Cli("overlap --train /nonexistent --test /nonexistent").code, 2);
  EXPECT_EQ(Cli("overlap --train x --test y --n 0").code, 1);
  EXPECT_EQ(Cli("classify --text hi --lexicons /nonexistent").code, 2);
  EXPECT_EQ(Cli("--help").code, 0);
  TempDir dir;
  WriteText(dir / "gw.json", R"({"temperature": 0.9})");
  EXPECT_EQ(Cli("evaluate --records " + Quote(FixturePath("generated.jsonl")) +
                " --judge llm-binary --gateway-config " + Quote(dir / "gw.json"))
                .code,
            3);
}

TEST(CliTest, OverlapStatsKappa) {
  TempDir dir;
  const CliRun o = Cli("overlap --train " + Quote(FixturePath("corpus.txt")) + " --test " +
                    Quote(FixturePath("corpus.txt")) + " --n 1..3");
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("1.000"), std::string::npos) << o.out;
  WriteText(dir / "ratings.txt", "A,A,B\nA,B,B\n");
  const CliRun k = Cli("kappa --input " + Quote(dir / "ratings.txt"));
  ASSERT_EQ(k.code, 0) << k.out;
  EXPECT_NE(k.out.find("-0.3333"), std::string::npos) << k.out;
  WriteText(dir / "plain.txt", "ab cd\nabc\n");
  const CliRun s = Cli("stats --input " + Quote(dir / "plain.txt") + " --level 2");
  ASSERT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("4.00"), std::string::npos) << s.out;
}

TEST(CliTest, BuildTestIsSeeded) {
  TempDir dir;
  const std::string args = "build-test --informal " + Quote(FixturePath("informal_pool.txt")) +
                           " --formal " + Quote(FixturePath("formal_pool.jsonl")) +
                           " --count 2 --seed 3 --out ";
  ASSERT_EQ(Cli(args + Quote(dir / "a.jsonl")).code, 0);
  ASSERT_EQ(Cli(args + Quote(dir / "b.jsonl")).code, 0);
  EXPECT_EQ(ReadText(dir / "a.jsonl"), ReadText(dir / "b.jsonl"));
  EXPECT_EQ(ReadRecords(dir / "a.jsonl").size(), 4u);
  EXPECT_EQ(Cli("build-test --informal " + Quote(FixturePath("informal_pool.txt")) + " --formal " +
                Quote(FixturePath("formal_pool.jsonl")) + " --count 4 --out " +
                Quote(dir / "c.jsonl"))
                .code,
            2);
}

TEST(CliTest, EndToEndOffline) {
  TempDir dir;
  const auto start = std::chrono::steady_clock::now();
  ASSERT_EQ(Cli("classify --input " + Quote(FixturePath("corpus.txt"))).code, 0);
  const CliRun build = Cli("build-3lf --corpus " + Quote(FixturePath("corpus.txt")) + " --stub " +
                        Quote(FixturePath("stub.json")) + " --accept-validated --jobs 3 --out " +
                        Quote(dir / "3lf"));
  ASSERT_EQ(build.code, 0) << build.out;
  EXPECT_EQ(ReadRecords(dir / "3lf" / "dataset.jsonl").size(), 15u);
  const CliRun audit = Cli("audit --strict --input " + Quote(dir / "3lf" / "dataset.jsonl"));
  EXPECT_EQ(audit.code, 0) << audit.out;
  const CliRun eval = Cli("evaluate --records " + Quote(FixturePath("generated.jsonl")) +
                       " --judge rule --meaning " + Quote(FixturePath("meaning.jsonl")) +
                       " --out " + Quote(dir / "report.json"));
  ASSERT_EQ(eval.code, 0) << eval.out;
  EXPECT_NE(eval.out.find("accuracy: 0.6667"), std::string::npos) << eval.out;
  const auto report = nlohmann::json::parse(ReadText(dir / "report.json"));
  EXPECT_EQ(report["total"], 6);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(60));
}

TEST(CliTest, BuildWithoutStubNeedsCredential) {
  TempDir dir;
  ::unsetenv("FORMALITY_API_KEY");
  EXPECT_EQ(Cli("build-3lf --corpus " + Quote(FixturePath("corpus.txt")) + " --out " +
                Quote(dir / "y"))
                .code,
            3);
}

}  // namespace
}  // namespace formality
