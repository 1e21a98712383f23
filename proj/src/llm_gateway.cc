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

#include "formality/llm_gateway.h"

#include <regex>
#include <thread>

#include <fmt/format.h>

#include "formality/error.h"

namespace formality {
namespace {

using nlohmann::json;

std::string TrimWhitespace(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool StripPair(std::string& s, std::string_view open, std::string_view close) {
  if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
    s = TrimWhitespace(s.substr(open.size(), s.size() - open.size() - close.size()));
    return true;
  }
  return false;
}

std::string Sentence(const Bindings& bindings) {
  auto it = bindings.find("sentence");
  return it == bindings.end() ? std::string() : it->second;
}

}  // namespace

void GatewayConfig::Validate() const {
  if (temperature != 0.0) {
    throw ConfigurationError(fmt::format("temperature must be 0, got {}", temperature));
  }
  if (max_attempts < 1) {
    throw ConfigurationError(fmt::format("max_attempts must be >= 1, got {}", max_attempts));
  }
  if (max_in_flight < 1 || max_in_flight > 1024) {
    throw ConfigurationError(fmt::format("max_in_flight must be in 1..1024, got {}", max_in_flight));
  }
  for (int ms : backoff_ms) {
    if (ms < 0) throw ConfigurationError("backoff delays must be non-negative");
  }
}

json GatewayConfig::ToJson() const {
  return {{"endpoint", endpoint},         {"model", model},
          {"temperature", temperature},   {"max_attempts", max_attempts},
          {"backoff_ms", backoff_ms},     {"credential_env", credential_env},
          {"max_in_flight", max_in_flight}, {"timeout_ms", timeout_ms}};
}

GatewayConfig GatewayConfig::FromJson(const json& j) {
  GatewayConfig c;
  try {
    c.endpoint = j.value("endpoint", c.endpoint);
    c.model = j.value("model", c.model);
    c.temperature = j.value("temperature", c.temperature);
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
    c.credential_env = j.value("credential_env", c.credential_env);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
  } catch (const json::exception& e) {
    throw ConfigurationError(fmt::format("bad gateway config: {}", e.what()));
  }
  c.Validate();
  return c;
}

GatewayConfig GatewayConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError(fmt::format("cannot read gateway config '{}'", path.string()));
  try {
    return FromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigurationError(fmt::format("gateway config '{}': {}", path.string(), e.what()));
  }
}

std::optional<long> FirstInteger(std::string_view text) {
  static const std::regex kInteger(R"((?:^|[^0-9A-Za-z_\-])(-?[0-9]+)(?![0-9A-Za-z_]))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(text.begin(), text.end(), m, kInteger)) return std::nullopt;
  try {
    return std::stol(m[1].str());
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

std::string NormalizeRewrite(std::string_view text) {
  std::string s = TrimWhitespace(text);
  // First paragraph, inner line breaks folded to spaces.
  std::string para;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t nl = s.find('\n', pos);
    const std::string line =
        TrimWhitespace(std::string_view(s).substr(pos, nl == std::string::npos ? nl : nl - pos));
    if (line.empty()) break;
    if (!para.empty()) para += ' ';
    para += line;
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  StripPair(para, "\"", "\"") || StripPair(para, "'", "'") ||
      StripPair(para, "“", "”") || StripPair(para, "‘", "’");
  return para;
}

json CallRecordToJson(const CallRecord& record) {
  json attempts = json::array();
  for (const AttemptLog& a : record.attempts) {
    attempts.push_back({{"status", a.status}, {"content", a.content}});
  }
  return {{"prompt", PromptName(record.prompt)},
          {"bindings", record.bindings},
          {"attempts", attempts},
          {"latency_ms", record.latency_ms},
          {"ok", record.ok}};
}

Gateway::Gateway(GatewayConfig config, std::shared_ptr<ChatTransport> transport,
                 Sleeper sleeper)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      sleeper_(sleeper ? std::move(sleeper)
                       : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })),
      in_flight_(std::clamp(config_.max_in_flight, 1, 1024)) {
  config_.Validate();
  if (!transport_) throw ConfigurationError("gateway has no transport");
}

void Gateway::SetCallLog(const std::filesystem::path& path) {
  std::lock_guard lock(log_mu_);
  log_ = std::make_unique<std::ofstream>(path, std::ios::app);
  if (!*log_) throw ConfigurationError(fmt::format("cannot open call log '{}'", path.string()));
}

void Gateway::Log(const CallRecord& record) {
  std::lock_guard lock(log_mu_);
  if (!log_) return;
  *log_ << CallRecordToJson(record).dump() << '\n';
  log_->flush();
}

template <typename T>
T Gateway::Call(PromptId prompt, const Bindings& bindings,
                const std::function<std::optional<T>(const std::string&)>& accept,
                const std::function<void(const std::string&)>& on_invalid) {
  ChatRequest request{prompt, bindings, Render(GetPrompt(prompt), bindings), config_.model,
                      config_.temperature};
  CallRecord record{prompt, bindings, {}, 0.0, false};
  const auto started = std::chrono::steady_clock::now();
  auto finish = [&](bool ok) {
    record.ok = ok;
    record.latency_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    Log(record);
  };

  std::string last_failure;
  bool last_was_invalid = false;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1 && !last_was_invalid && !config_.backoff_ms.empty()) {
      const std::size_t k = std::min<std::size_t>(attempt - 2, config_.backoff_ms.size() - 1);
      sleeper_(std::chrono::milliseconds(config_.backoff_ms[k]));
    }
    ChatResponse response;
    try {
      in_flight_.acquire();
      try {
        response = transport_->Send(request);
      } catch (...) {
        in_flight_.release();
        throw;
      }
      in_flight_.release();
    } catch (const TransportError& e) {
      record.attempts.push_back({0, e.what()});
      last_failure = e.what();
      last_was_invalid = false;
      continue;
    }
    record.attempts.push_back({response.status, response.content});
    if (response.status >= 500) {
      last_failure = fmt::format("HTTP {}", response.status);
      last_was_invalid = false;
      continue;
    }
    if (response.status >= 400) {
      finish(false);
      throw ClientError(response.status,
                        fmt::format("{} request rejected with HTTP {}: {}", PromptName(prompt),
                                    response.status, response.content));
    }
    if (std::optional<T> value = accept(response.content)) {
      finish(true);
      return *value;
    }
    last_failure = response.content;
    last_was_invalid = true;
  }
  finish(false);
  if (last_was_invalid) on_invalid(last_failure);
  throw TransportError(fmt::format("{} failed after {} attempts: {}", PromptName(prompt),
                                   config_.max_attempts, last_failure));
}

std::string Gateway::Complete(PromptId prompt, const Bindings& bindings) {
  return Call<std::string>(
      prompt, bindings, [](const std::string& s) { return std::optional<std::string>(s); },
      [](const std::string&) {});
}

int Gateway::JudgeBinary(const std::string& sentence) {
  return Call<int>(
      PromptId::kJudgeBinary, {{"sentence", sentence}},
      [](const std::string& s) -> std::optional<int> {
        auto v = FirstInteger(s);
        if (v && (*v == 0 || *v == 1)) return static_cast<int>(*v);
        return std::nullopt;
      },
      [](const std::string& last) {
        throw JudgeError(fmt::format("binary judge gave no 0/1 answer: '{}'", last));
      });
}

FormalityLabel Gateway::Judge3Way(const std::string& sentence) {
  return Call<FormalityLabel>(
      PromptId::kLabel3Way, {{"sentence", sentence}},
      [](const std::string& s) -> std::optional<FormalityLabel> {
        auto v = FirstInteger(s);
        return v ? LabelFromInt(*v) : std::nullopt;
      },
      [](const std::string& last) {
        throw JudgeError(fmt::format("3-way judge gave no 0/1/2 answer: '{}'", last));
      });
}

int Gateway::JudgeFluency(const std::string& sentence) {
  return Call<int>(
      PromptId::kJudgeFluency, {{"sentence", sentence}},
      [](const std::string& s) -> std::optional<int> {
        auto v = FirstInteger(s);
        if (v && *v >= 0 && *v <= 5) return static_cast<int>(*v);
        return std::nullopt;
      },
      [](const std::string& last) {
        throw JudgeError(fmt::format("fluency judge gave no 0..5 answer: '{}'", last));
      });
}

std::string Gateway::Rewrite(PromptId prompt, const std::string& sentence,
                             const Bindings& extra) {
  if (!GetPrompt(prompt).rewrite) {
    throw UsageError(fmt::format("'{}' is not a rewrite prompt", PromptName(prompt)));
  }
  Bindings bindings = extra;
  bindings["sentence"] = sentence;
  return Call<std::string>(
      prompt, bindings,
      [](const std::string& s) -> std::optional<std::string> {
        std::string out = NormalizeRewrite(s);
        if (out.empty()) return std::nullopt;
        return out;
      },
      [&](const std::string&) {
        throw RewriteError(fmt::format("{} returned no usable text for '{}'",
                                       PromptName(prompt), Sentence(bindings)));
      });
}

}  // namespace formality
