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

// Chat-completion gateway: one retry loop shared by every prompt, response
// parsers for the judge prompts, and the transports it can run over.

#ifndef FORMALITY_LLM_GATEWAY_H_
#define FORMALITY_LLM_GATEWAY_H_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "formality/classifier.h"
#include "formality/prompts.h"

namespace formality {

struct GatewayConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o";
  double temperature = 0.0;
  int max_attempts = 3;
  // Delay before retry k is backoff_ms[min(k - 1, size - 1)].
  std::vector<int> backoff_ms = {500, 2000, 8000};
  std::string credential_env = "FORMALITY_API_KEY";
  int max_in_flight = 4;
  int timeout_ms = 60000;

  // Throws ConfigurationError on a non-zero temperature, attempts < 1 or a
  // non-positive in-flight cap.
  void Validate() const;
  nlohmann::json ToJson() const;
  static GatewayConfig FromJson(const nlohmann::json& json);
  static GatewayConfig Load(const std::filesystem::path& path);
};

struct ChatRequest {
  PromptId prompt;
  Bindings bindings;
  RenderedPrompt rendered;
  std::string model;
  double temperature = 0.0;
};

struct ChatResponse {
  int status = 200;
  std::string content;
};

// Throws TransportError when no HTTP response was obtained.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual ChatResponse Send(const ChatRequest& request) = 0;
};

// OpenAI-style chat completion over HTTP(S). The constructor reads the
// credential and throws ConfigurationError when it is missing.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(const GatewayConfig& config);
  ChatResponse Send(const ChatRequest& request) override;

 private:
  GatewayConfig config_;
  std::string credential_;
  std::string origin_;
  std::string path_;
};

// One scripted step of a stub conversation.
struct StubStep {
  enum class Kind { kContent, kStatus, kFail };
  Kind kind = Kind::kContent;
  std::string content;
  int status = 200;

  static StubStep Content(std::string text) { return {Kind::kContent, std::move(text), 200}; }
  static StubStep Status(int code) { return {Kind::kStatus, {}, code}; }
  static StubStep Fail() { return {Kind::kFail, {}, 0}; }
};

// Offline transport keyed by (prompt, "sentence" binding). Each key plays
// its steps in order and then repeats the last one. Unscripted keys either
// answer from the rule classifier (judge prompts; rewrites echo the input)
// or get a 404.
class StubTransport : public ChatTransport {
 public:
  enum class Fallback { kRule, kError };

  explicit StubTransport(Fallback fallback = Fallback::kError,
                         std::shared_ptr<const LexiconSet> lexicons = nullptr);

  void Script(PromptId prompt, const std::string& sentence, std::vector<StubStep> steps);
  void Script(PromptId prompt, const std::string& sentence,
              const std::vector<std::string>& responses);

  ChatResponse Send(const ChatRequest& request) override;
  std::size_t calls() const;

  // {"fallback": "rule"|"error", "responses": [{"prompt", "sentence",
  //   "steps": ["text" | {"status": 503} | {"fail": true}, ...]}]}
  static std::shared_ptr<StubTransport> Load(const std::filesystem::path& path,
                                             std::shared_ptr<const LexiconSet> lexicons);
  // Rebuilds the scripted steps from a gateway call log.
  static std::shared_ptr<StubTransport> FromCallLog(const std::filesystem::path& path,
                                                    Fallback fallback = Fallback::kError);

 private:
  struct Script_ {
    std::vector<StubStep> steps;
    std::size_t next = 0;
  };
  ChatResponse Play(const StubStep& step) const;
  ChatResponse RuleAnswer(const ChatRequest& request) const;

  Fallback fallback_;
  std::shared_ptr<const LexiconSet> lexicons_;
  mutable std::mutex mu_;
  std::map<std::pair<PromptId, std::string>, Script_> scripts_;
  std::size_t calls_ = 0;
};

// First integer token of a model response, if any.
std::optional<long> FirstInteger(std::string_view text);
// Trimmed first paragraph with wrapping quotes removed; empty if nothing is
// left.
std::string NormalizeRewrite(std::string_view text);

struct AttemptLog {
  int status = 0;  // 0 when the transport failed
  std::string content;
};

struct CallRecord {
  PromptId prompt;
  Bindings bindings;
  std::vector<AttemptLog> attempts;
  double latency_ms = 0.0;
  bool ok = false;
};

nlohmann::json CallRecordToJson(const CallRecord& record);

using Sleeper = std::function<void(std::chrono::milliseconds)>;

class Gateway {
 public:
  Gateway(GatewayConfig config, std::shared_ptr<ChatTransport> transport,
          Sleeper sleeper = nullptr);

  // Raw message text. Retries transport failures and 5xx; a 4xx throws
  // ClientError at once.
  std::string Complete(PromptId prompt, const Bindings& bindings);

  // 1 formal, 0 informal.
  int JudgeBinary(const std::string& sentence);
  FormalityLabel Judge3Way(const std::string& sentence);
  int JudgeFluency(const std::string& sentence);
  std::string Rewrite(PromptId prompt, const std::string& sentence,
                      const Bindings& extra = {});

  // Appends one JSON line per call.
  void SetCallLog(const std::filesystem::path& path);
  const GatewayConfig& config() const { return config_; }

 private:
  // Runs the retry loop; `accept` returns nullopt for content that should
  // consume another attempt.
  template <typename T>
  T Call(PromptId prompt, const Bindings& bindings,
         const std::function<std::optional<T>(const std::string&)>& accept,
         const std::function<void(const std::string&)>& on_invalid);
  void Log(const CallRecord& record);

  GatewayConfig config_;
  std::shared_ptr<ChatTransport> transport_;
  Sleeper sleeper_;
  std::counting_semaphore<1024> in_flight_;
  std::mutex log_mu_;
  std::unique_ptr<std::ofstream> log_;
};

}  // namespace formality

#endif  // FORMALITY_LLM_GATEWAY_H_
