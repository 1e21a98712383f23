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

#include <chrono>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "formality/error.h"
#include "formality/llm_gateway.h"
#include "formality/records.h"
#include "test_support.h"

namespace formality {
namespace {

using testing::Lexicons;
using testing::TempDir;

// Replays canned responses and records every request.
class FakeTransport : public ChatTransport {
 public:
  explicit FakeTransport(std::vector<StubStep> steps) : steps_(steps.begin(), steps.end()) {}

  ChatResponse Send(const ChatRequest& request) override {
    std::lock_guard lock(mu_);
    requests.push_back(request);
    if (steps_.empty()) return {500, ""};
    StubStep s = steps_.front();
    if (steps_.size() > 1) steps_.pop_front();
    if (s.kind == StubStep::Kind::kFail) throw TransportError("connection reset");
    if (s.kind == StubStep::Kind::kStatus) return {s.status, ""};
    return {200, s.content};
  }

  std::vector<ChatRequest> requests;

 private:
  std::mutex mu_;
  std::deque<StubStep> steps_;
};

struct Harness {
  explicit Harness(std::vector<StubStep> steps, GatewayConfig config = {})
      : transport(std::make_shared<FakeTransport>(std::move(steps))),
        gateway(config, transport,
                [this](std::chrono::milliseconds d) { sleeps.push_back(d.count()); }) {}

  std::shared_ptr<FakeTransport> transport;
  std::vector<long> sleeps;
  Gateway gateway;
};

TEST(FirstIntegerTest, Parses) {
  EXPECT_EQ(FirstInteger("1"), 1);
  EXPECT_EQ(FirstInteger(" 0 "), 0);
  EXPECT_EQ(FirstInteger("The answer is 2."), 2);
  EXPECT_EQ(FirstInteger("-1"), -1);
  EXPECT_EQ(FirstInteger("gpt4 says 3"), 3);
  EXPECT_EQ(FirstInteger("no digits"), std::nullopt);
  EXPECT_EQ(FirstInteger(""), std::nullopt);
}

TEST(NormalizeRewriteTest, TrimsAndUnquotes) {
  EXPECT_EQ(NormalizeRewrite("  \"Hello there.\"  "), "Hello there.");
  EXPECT_EQ(NormalizeRewrite("“Quoted”"), "Quoted");
  EXPECT_EQ(NormalizeRewrite("line one\nline two\n\nsecond paragraph"), "line one line two");
  EXPECT_EQ(NormalizeRewrite("  \n "), "");
  EXPECT_EQ(NormalizeRewrite("\"\""), "");
}

TEST(GatewayJudgeTest, AcceptsPaddedDigits) {
  Harness h({StubStep::Content("1")});
  EXPECT_EQ(h.gateway.JudgeBinary("x"), 1);
  Harness h2({StubStep::Content(" 0 ")});
  EXPECT_EQ(h2.gateway.JudgeBinary("x"), 0);
}

TEST(GatewayJudgeTest, GarbageRetriesThenFails) {
  Harness h({StubStep::Content("maybe"), StubStep::Content("7"), StubStep::Content("formal")});
  EXPECT_THROW(h.gateway.JudgeBinary("x"), JudgeError);
  EXPECT_EQ(h.transport->requests.size(), 3u);
  EXPECT_TRUE(h.sleeps.empty());
}

TEST(GatewayJudgeTest, RecoversOnLaterAttempt) {
  Harness h({StubStep::Content("unsure"), StubStep::Content("2")});
  EXPECT_EQ(h.gateway.Judge3Way("x"), FormalityLabel::kFormal);
}

TEST(GatewayJudgeTest, FluencyRange) {
  Harness ok({StubStep::Content("Score: 4")});
  EXPECT_EQ(ok.gateway.JudgeFluency("x"), 4);
  Harness bad({StubStep::Content("6")});
  EXPECT_THROW(bad.gateway.JudgeFluency("x"), JudgeError);
}

TEST(GatewayRetryTest, ServerErrorsBackOff) {
  Harness h({StubStep::Status(503), StubStep::Fail(), StubStep::Content("1")});
  EXPECT_EQ(h.gateway.JudgeBinary("x"), 1);
  EXPECT_EQ(h.sleeps, (std::vector<long>{500, 2000}));
}

TEST(GatewayRetryTest, ExhaustedTransportThrows) {
  GatewayConfig c;
  c.max_attempts = 4;
  c.backoff_ms = {10, 20};
  Harness h({StubStep::Status(500)}, c);
  EXPECT_THROW(h.gateway.Complete(PromptId::kLabel3Way, {{"sentence", "x"}}), TransportError);
  EXPECT_EQ(h.transport->requests.size(), 4u);
  EXPECT_EQ(h.sleeps, (std::vector<long>{10, 20, 20}));
}

TEST(GatewayRetryTest, ClientErrorIsImmediate) {
  Harness h({StubStep::Status(401), StubStep::Content("1")});
  try {
    h.gateway.JudgeBinary("x");
    FAIL() << "expected ClientError";
  } catch (const ClientError& e) {
    EXPECT_EQ(e.status(), 401);
  }
  EXPECT_EQ(h.transport->requests.size(), 1u);
}

TEST(GatewayRequestTest, CarriesModelTemperatureAndRendering) {
  Harness h({StubStep::Content("\"A formal sentence.\"")});
  EXPECT_EQ(h.gateway.Rewrite(PromptId::kRewriteCasualToFormal, "hey there"),
            "A formal sentence.");
  const ChatRequest& r = h.transport->requests.at(0);
  EXPECT_EQ(r.model, "gpt-4o");
  EXPECT_EQ(r.temperature, 0.0);
  EXPECT_EQ(r.bindings.at("sentence"), "hey there");
  EXPECT_NE(r.rendered.user.find("hey there"), std::string::npos);
}

TEST(GatewayRequestTest, EmptyRewriteIsInvalid) {
  Harness h({StubStep::Content("   ")});
  EXPECT_THROW(h.gateway.Rewrite(PromptId::kRewriteCasualToFormal, "a"), RewriteError);
  Harness j({StubStep::Content("ok")});
  EXPECT_THROW(j.gateway.Rewrite(PromptId::kJudgeBinary, "a"), UsageError);
}

TEST(GatewayConfigTest, Validation) {
  GatewayConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.temperature = 0.7;
  EXPECT_THROW(c.Validate(), ConfigurationError);
  c = {};
  c.max_attempts = 0;
  EXPECT_THROW(c.Validate(), ConfigurationError);
  c = {};
  c.max_in_flight = 0;
  EXPECT_THROW(c.Validate(), ConfigurationError);
}

TEST(GatewayConfigTest, JsonRoundTrip) {
  GatewayConfig c;
  c.model = "local";
  c.backoff_ms = {1, 2};
  c.max_in_flight = 9;
  const GatewayConfig back = GatewayConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.model, "local");
  EXPECT_EQ(back.backoff_ms, c.backoff_ms);
  EXPECT_EQ(back.max_in_flight, 9);
  EXPECT_THROW(GatewayConfig::FromJson({{"temperature", 1.0}}), ConfigurationError);
}

TEST(HttpTransportTest, MissingCredentialIsConfigurationError) {
  GatewayConfig c;
  c.credential_env = "FORMALITY_TEST_SURELY_UNSET";
  ::unsetenv(c.credential_env.c_str());
  EXPECT_THROW(HttpChatTransport{c}, ConfigurationError);
}

TEST(HttpTransportTest, UnreachableEndpointIsTransportError) {
  GatewayConfig c;
  c.credential_env = "FORMALITY_TEST_KEY";
  c.endpoint = "http://127.0.0.1:9/v1/chat/completions";
  c.timeout_ms = 500;
  ::setenv(c.credential_env.c_str(), "k", 1);
  HttpChatTransport t(c);
  ChatRequest r;
  r.prompt = PromptId::kLabel3Way;
  EXPECT_THROW(t.Send(r), TransportError);
}

TEST(StubTransportTest, ScriptedStepsThenSticky) {
  auto stub = std::make_shared<StubTransport>();
  stub->Script(PromptId::kJudgeBinary, "a", std::vector<std::string>{"0", "1"});
  Gateway g({}, stub, [](std::chrono::milliseconds) {});
  EXPECT_EQ(g.JudgeBinary("a"), 0);
  EXPECT_EQ(g.JudgeBinary("a"), 1);
  EXPECT_EQ(g.JudgeBinary("a"), 1);
  EXPECT_THROW(g.JudgeBinary("unscripted"), ClientError);
  EXPECT_EQ(stub->calls(), 4u);
}

TEST(StubTransportTest, RuleFallback) {
  auto stub = std::make_shared<StubTransport>(StubTransport::Fallback::kRule, Lexicons());
  Gateway g({}, stub);
  EXPECT_EQ(g.JudgeBinary("It appears that the proposal was adopted."), 1);
  EXPECT_EQ(g.JudgeBinary("lol ok"), 0);
  EXPECT_EQ(g.Judge3Way("You can't."), FormalityLabel::kCasual);
  EXPECT_EQ(g.Rewrite(PromptId::kRewriteCasualToFormal, "same"), "same");
}

TEST(StubTransportTest, LoadsJsonScript) {
  TempDir dir;
  WriteText(dir / "stub.json", R"({"fallback": "error", "responses": [
      {"prompt": "label_3way", "sentence": "s", "steps": [{"status": 503}, {"fail": true}, "2"]}]})");
  auto stub = StubTransport::Load(dir / "stub.json", Lexicons());
  std::vector<long> sleeps;
  GatewayConfig c;
  c.max_attempts = 3;
  Gateway g(c, stub, [&](std::chrono::milliseconds d) { sleeps.push_back(d.count()); });
  EXPECT_EQ(g.Judge3Way("s"), FormalityLabel::kFormal);
  EXPECT_EQ(sleeps.size(), 2u);
  WriteText(dir / "bad.json", R"({"responses": [{"prompt": "nope", "sentence": "s", "steps": []}]})");
  EXPECT_THROW(StubTransport::Load(dir / "bad.json", Lexicons()), DataError);
}

TEST(CallLogTest, ReplaysThroughStub) {
  TempDir dir;
  {
    Harness h({StubStep::Status(503), StubStep::Content("1")});
    h.gateway.SetCallLog(dir / "calls.jsonl");
    EXPECT_EQ(h.gateway.JudgeBinary("x"), 1);
  }
  const auto lines = ReadLines(dir / "calls.jsonl");
  ASSERT_EQ(lines.size(), 1u);
  const auto j = nlohmann::json::parse(lines[0]);
  EXPECT_EQ(j["prompt"], "judge_binary");
  EXPECT_EQ(j["attempts"].size(), 2u);
  EXPECT_EQ(j["ok"], true);
  auto replay = StubTransport::FromCallLog(dir / "calls.jsonl");
  Gateway g({}, replay, [](std::chrono::milliseconds) {});
  EXPECT_EQ(g.JudgeBinary("x"), 1);
}

TEST(GatewayConcurrencyTest, ParallelCallsAllComplete) {
  auto stub = std::make_shared<StubTransport>(StubTransport::Fallback::kRule, Lexicons());
  GatewayConfig c;
  c.max_in_flight = 2;
  Gateway g(c, stub);
  std::vector<std::thread> threads;
  std::atomic<int> formal{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 25; ++i) formal += g.JudgeBinary("The proposal was adopted.");
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(formal.load(), 200);
  EXPECT_EQ(stub->calls(), 200u);
}

}  // namespace
}  // namespace formality
