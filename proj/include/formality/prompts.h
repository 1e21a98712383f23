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

// Prompt catalog for the chat-completion gateway.
//
// Templates marked `authored` have no published source and were written for
// this toolkit. The others are stored in canonical form: each source line
// trimmed, surrounding blank lines dropped, box markup removed.

#ifndef FORMALITY_PROMPTS_H_
#define FORMALITY_PROMPTS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace formality {

enum class PromptId {
  kLabel3Way,
  kRewriteCasualToInformal,
  kRewriteCasualToFormal,
  kRewriteInformalToFormalNaive,
  kJudgeBinary,
  kJudgeFluency,
  kRevisionInformal,
  kRevisionFormal,
};

std::string_view PromptName(PromptId id);
std::optional<PromptId> ParsePromptId(std::string_view name);
const std::vector<PromptId>& AllPromptIds();

// `marker` is the literal text in the user template that `key` replaces.
struct Placeholder {
  std::string key;
  std::string marker;
};

struct PromptTemplate {
  PromptId id;
  std::string system;
  std::string user;
  std::vector<Placeholder> placeholders;
  bool authored = false;
  bool rewrite = false;
};

const PromptTemplate& GetPrompt(PromptId id);

using Bindings = std::map<std::string, std::string>;

struct RenderedPrompt {
  std::string system;
  std::string user;
};

// Single left-to-right pass, so bound values are never re-expanded. Throws
// UsageError for an unbound placeholder or a binding the template lacks.
RenderedPrompt Render(const PromptTemplate& prompt, const Bindings& bindings);

}  // namespace formality

#endif  // FORMALITY_PROMPTS_H_
