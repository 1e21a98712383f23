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

#include "formality/prompts.h"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "formality/error.h"

namespace formality {
namespace {

constexpr std::array<std::string_view, 8> kNames = {
    "label_3way",       "rewrite_casual_to_informal", "rewrite_casual_to_formal",
    "rewrite_informal_to_formal_naive", "judge_binary", "judge_fluency",
    "revision_informal", "revision_formal",
};

const Placeholder kSentence{"sentence", "{sentence}"};
const Placeholder kPrevious{"previous", "{previous}"};

constexpr const char* kJudgeBinarySystem = R"(You are the formality style transfer agent. Here are the definitions of Formal, Casual, Informal sequence respectively.

- Formal sequence : employs hedging phrases (e.g., "it appears that", "may suggest"), nominalization, and passive constructions. This tone emphasizes objectivity and detachment.

- Casual sequence : uses contractions, abbreviations, and direct address (e.g., "you", "hey") but avoids overtly informal elements such as emojis or slang. It is relaxed yet grammatically clean.

- Informal sequence : is characterized by the presence of slang, netspeak, interjections, emojis, non-standard spelling, and grammatical errors. This tone resembles spontaneous conversation in online settings.

Evaluate the Target sequence, and nothing else.)";

constexpr const char* kJudgeBinaryUser = R"(Evaluate the Target sequence.
If the sequence is formal, answer 1, and nothing else.
else the sequence is informal, answer 0, and nothing else.

Target sequence : {}

The answer is)";

constexpr const char* kLabel3WaySystem = R"(You are not an AI assistant. You are a specialized formality classification machine that can only output three integer labels: 0, 1, or 2.
Label the following sentence on formality based on the presence of specific linguistic features. Strictly follow the following labeling rules:

Label 0:
- Assign Label 0 if the sentence contains **any** of the following: slang, netspeak, interjections, emojis, non-standard spellings, or grammatical errors.

Label 1:
- If none of the above features are present, assign Label 1 if the sentence includes **any** of: contractions, abbreviations, or direct address.

Label 2:
- If none of the above apply, and the sentence contains **any** of the following: hedging phrases, nominalizations, or passive voice --- assign Label 2.

Note:
- Label 1 should also be assigned to all the other sentences that do not contain strong stylistic features listed above.

Take a deep breath and think step by step.)";

constexpr const char* kCasualToInformalSystem = R"(You are not an AI assistant. You are a specialized formality transfer machine that can only output rewritten sentences.
Rewrite the following casual sentence to an informal sentence based on the presence of specific linguistic features:

Informal:
- A sentence is informal if it contains **any** of the following: slang, netspeak, interjections, emojis, non-standard spellings, or grammatical errors.

Casual:
- A sentence is casual if none of the above features are present, and includes **any** of: contractions, abbreviations, or direct address.

Formal:
- A sentence is formal if none of the above apply, and it contains **any** of the following: hedging phrases, nominalizations, or passive voice.

Note:
- All the other sentences that do not contain strong stylistic features listed above are also considered casual.

Only answer with the rewritten sentence.
Take a deep breath and think step by step.)";

constexpr const char* kFluencySystem = R"(You are a specialized fluency scoring machine that can only output integer scores.

Score the following context on fluency on an scale from 0 to 5, where 5 is of the highest fluency.

Only focus on whether the sentence sounds natural and coherent.

Do not penalize an informal sentence for informal style features such as slang or contractions,
and do not penalize a formal sentence for formal style features such as hedging phrases or passive voice.

Take a deep breath and think step by step.

**Answer only with the integer value.**)";

constexpr const char* kCasualToFormalSystem =
    R"(You are a sentence rewriting machine that can only output rewritten sentences.
Rewrite the following casual sentence to a formal sentence with the same meaning.

Formal:
- A formal sentence contains hedging phrases, nominalizations, or passive voice.
- It contains no contractions, abbreviations, or direct address.
- It contains no slang, netspeak, interjections, emojis, non-standard spellings, or grammatical errors.

Only answer with the rewritten sentence.)";

constexpr const char* kNaiveSystem =
    R"(You are a sentence rewriting machine that can only output rewritten sentences.
Rewrite the following informal sentence directly to a formal sentence with the same meaning.

Formal:
- A formal sentence contains hedging phrases, nominalizations, or passive voice.
- It contains no slang, netspeak, interjections, emojis, non-standard spellings, or grammatical errors.

Only answer with the rewritten sentence.)";

constexpr const char* kRevisionInformalSystem =
    R"(You are a sentence rewriting machine that can only output rewritten sentences.
The previous rewrite of a casual sentence was not informal enough.
Revise it so that it clearly contains at least one of the following: slang, netspeak, interjections, emojis, non-standard spellings, or grammatical errors.
Keep the meaning of the original sentence.

Only answer with the revised sentence.)";

constexpr const char* kRevisionFormalSystem =
    R"(You are a sentence rewriting machine that can only output rewritten sentences.
The previous rewrite of a casual sentence was not formal.
Revise it so that it contains hedging phrases, nominalizations, or passive voice, and remove any contractions, abbreviations, direct address, or informal features.
Keep the meaning of the original sentence.

Only answer with the revised sentence.)";

constexpr const char* kRevisionUser = "Original sentence: {sentence}\nPrevious rewrite: {previous}";

std::vector<PromptTemplate> BuildCatalog() {
  std::vector<PromptTemplate> c;
  c.push_back({PromptId::kLabel3Way, kLabel3WaySystem, "{sentence}", {kSentence}, false, false});
  c.push_back({PromptId::kRewriteCasualToInformal, kCasualToInformalSystem, "{sentence}",
               {kSentence}, false, true});
  c.push_back({PromptId::kRewriteCasualToFormal, kCasualToFormalSystem, "{sentence}",
               {kSentence}, true, true});
  c.push_back({PromptId::kRewriteInformalToFormalNaive, kNaiveSystem, "{sentence}",
               {kSentence}, true, true});
  c.push_back({PromptId::kJudgeBinary, kJudgeBinarySystem, kJudgeBinaryUser,
               {{"sentence", "{}"}}, false, false});
  c.push_back({PromptId::kJudgeFluency, kFluencySystem, "{sentence}", {kSentence}, false,
               false});
  c.push_back({PromptId::kRevisionInformal, kRevisionInformalSystem, kRevisionUser,
               {kSentence, kPrevious}, true, true});
  c.push_back({PromptId::kRevisionFormal, kRevisionFormalSystem, kRevisionUser,
               {kSentence, kPrevious}, true, true});
  return c;
}

}  // namespace

std::string_view PromptName(PromptId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<PromptId> ParsePromptId(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<PromptId>(i);
  }
  return std::nullopt;
}

const std::vector<PromptId>& AllPromptIds() {
  static const std::vector<PromptId> kIds = [] {
    std::vector<PromptId> ids;
    for (std::size_t i = 0; i < kNames.size(); ++i) ids.push_back(static_cast<PromptId>(i));
    return ids;
  }();
  return kIds;
}

const PromptTemplate& GetPrompt(PromptId id) {
  static const std::vector<PromptTemplate> kCatalog = BuildCatalog();
  return kCatalog[static_cast<std::size_t>(id)];
}

RenderedPrompt Render(const PromptTemplate& prompt, const Bindings& bindings) {
  for (const auto& [key, value] : bindings) {
    const bool known = std::any_of(prompt.placeholders.begin(), prompt.placeholders.end(),
                                   [&](const Placeholder& p) { return p.key == key; });
    if (!known) {
      throw UsageError(
          fmt::format("prompt '{}' has no placeholder '{}'", PromptName(prompt.id), key));
    }
  }
  for (const Placeholder& p : prompt.placeholders) {
    if (!bindings.contains(p.key)) {
      throw UsageError(
          fmt::format("prompt '{}': placeholder '{}' is unbound", PromptName(prompt.id), p.key));
    }
  }
  RenderedPrompt out{prompt.system, {}};
  const std::string& user = prompt.user;
  std::size_t i = 0;
  while (i < user.size()) {
    const Placeholder* hit = nullptr;
    for (const Placeholder& p : prompt.placeholders) {
      if (user.compare(i, p.marker.size(), p.marker) == 0) {
        hit = &p;
        break;
      }
    }
    if (hit) {
      out.user += bindings.at(hit->key);
      i += hit->marker.size();
    } else {
      out.user += user[i++];
    }
  }
  return out;
}

}  // namespace formality
