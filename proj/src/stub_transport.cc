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

#include <fstream>

#include <fmt/format.h>

#include "formality/error.h"
#include "formality/llm_gateway.h"

namespace formality {
namespace {

using nlohmann::json;

StubStep StepFromJson(const json& j) {
  if (j.is_string()) return StubStep::Content(j.get<std::string>());
  if (j.is_object() && j.contains("status")) return StubStep::Status(j.at("status").get<int>());
  if (j.is_object() && j.value("fail", false)) return StubStep::Fail();
  throw DataError(fmt::format("bad stub step: {}", j.dump()));
}

std::string SentenceOf(const Bindings& bindings) {
  auto it = bindings.find("sentence");
  return it == bindings.end() ? std::string() : it->second;
}

}  // namespace

StubTransport::StubTransport(Fallback fallback, std::shared_ptr<const LexiconSet> lexicons)
    : fallback_(fallback), lexicons_(std::move(lexicons)) {
  if (fallback_ == Fallback::kRule && !lexicons_) {
    throw ConfigurationError("rule fallback needs lexicons");
  }
}

void StubTransport::Script(PromptId prompt, const std::string& sentence,
                           std::vector<StubStep> steps) {
  if (steps.empty()) throw UsageError("stub script needs at least one step");
  std::lock_guard lock(mu_);
  scripts_[{prompt, sentence}] = {std::move(steps), 0};
}

void StubTransport::Script(PromptId prompt, const std::string& sentence,
                           const std::vector<std::string>& responses) {
  std::vector<StubStep> steps;
  for (const auto& r : responses) steps.push_back(StubStep::Content(r));
  Script(prompt, sentence, std::move(steps));
}

std::size_t StubTransport::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

ChatResponse StubTransport::Play(const StubStep& step) const {
  switch (step.kind) {
    case StubStep::Kind::kContent:
      return {200, step.content};
    case StubStep::Kind::kStatus:
      return {step.status, fmt::format("stub status {}", step.status)};
    case StubStep::Kind::kFail:
      throw TransportError("stub connection failure");
  }
  return {500, "unreachable"};
}

ChatResponse StubTransport::RuleAnswer(const ChatRequest& request) const {
  const std::string sentence = SentenceOf(request.bindings);
  switch (request.prompt) {
    case PromptId::kJudgeBinary:
      return {200, Classify(sentence, *lexicons_).label == FormalityLabel::kFormal ? "1" : "0"};
    case PromptId::kLabel3Way:
      return {200, std::to_string(LabelCode(Classify(sentence, *lexicons_).label))};
    case PromptId::kJudgeFluency:
      return {200, "5"};
    default:
      return {200, sentence};
  }
}

ChatResponse StubTransport::Send(const ChatRequest& request) {
  std::optional<StubStep> step;
  {
    std::lock_guard lock(mu_);
    ++calls_;
    auto it = scripts_.find({request.prompt, SentenceOf(request.bindings)});
    if (it != scripts_.end()) {
      Script_& s = it->second;
      step = s.steps[std::min(s.next, s.steps.size() - 1)];
      if (s.next < s.steps.size()) ++s.next;
    }
  }
  if (step) return Play(*step);
  if (fallback_ == Fallback::kRule) return RuleAnswer(request);
  return {404, fmt::format("no stub response for {} '{}'", PromptName(request.prompt),
                           SentenceOf(request.bindings))};
}

std::shared_ptr<StubTransport> StubTransport::Load(const std::filesystem::path& path,
                                                   std::shared_ptr<const LexiconSet> lexicons) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot read stub file '{}'", path.string()));
  try {
    const json j = json::parse(in);
    const std::string fallback = j.value("fallback", "error");
    if (fallback != "rule" && fallback != "error") {
      throw DataError(fmt::format("unknown stub fallback '{}'", fallback));
    }
    auto stub = std::make_shared<StubTransport>(
        fallback == "rule" ? Fallback::kRule : Fallback::kError, std::move(lexicons));
    for (const json& entry : j.value("responses", json::array())) {
      const std::string name = entry.at("prompt").get<std::string>();
      const auto prompt = ParsePromptId(name);
      if (!prompt) throw DataError(fmt::format("unknown prompt id '{}' in stub file", name));
      std::vector<StubStep> steps;
      for (const json& s : entry.at("steps")) steps.push_back(StepFromJson(s));
      stub->Script(*prompt, entry.at("sentence").get<std::string>(), std::move(steps));
    }
    return stub;
  } catch (const json::exception& e) {
    throw DataError(fmt::format("stub file '{}': {}", path.string(), e.what()));
  }
}

std::shared_ptr<StubTransport> StubTransport::FromCallLog(const std::filesystem::path& path,
                                                          Fallback fallback) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot read call log '{}'", path.string()));
  if (fallback == Fallback::kRule) {
    throw ConfigurationError("call-log replay supports only the error fallback");
  }
  auto stub = std::make_shared<StubTransport>(fallback);
  // Calls sharing a key are concatenated in log order.
  std::map<std::pair<PromptId, std::string>, std::vector<StubStep>> steps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const auto prompt = ParsePromptId(j.at("prompt").get<std::string>());
      if (!prompt) throw DataError("unknown prompt id");
      const std::string sentence = j.at("bindings").value("sentence", "");
      auto& seq = steps[{*prompt, sentence}];
      for (const json& a : j.at("attempts")) {
        const int status = a.at("status").get<int>();
        if (status == 0) {
          seq.push_back(StubStep::Fail());
        } else if (status == 200) {
          seq.push_back(StubStep::Content(a.at("content").get<std::string>()));
        } else {
          seq.push_back(StubStep::Status(status));
        }
      }
    } catch (const std::exception& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  for (auto& [key, seq] : steps) {
    if (!seq.empty()) stub->Script(key.first, key.second, std::move(seq));
  }
  return stub;
}

}  // namespace formality
