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

// Rule-based three-level formality classifier and the continuous
// deictic/non-deictic formality score.

#ifndef FORMALITY_CLASSIFIER_H_
#define FORMALITY_CLASSIFIER_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formality/features.h"
#include "formality/lexicon.h"
#include "formality/text.h"

namespace formality {

// Numeric codes are the labels the 3-way judge prompt emits.
enum class FormalityLabel { kInformal = 0, kCasual = 1, kFormal = 2 };

constexpr std::array<FormalityLabel, 3> kAllLabels = {
    FormalityLabel::kInformal, FormalityLabel::kCasual, FormalityLabel::kFormal};

std::string_view LabelName(FormalityLabel label);  // "Informal", ...
std::optional<FormalityLabel> LabelFromInt(long value);
std::optional<FormalityLabel> ParseLabel(std::string_view text);  // name or digit
inline int LabelCode(FormalityLabel label) { return static_cast<int>(label); }

struct LabeledSentence {
  TaggedSentence sentence;
  FormalityLabel label = FormalityLabel::kCasual;
  std::vector<FeatureEvidence> evidence;
  // Absent when the score is undefined (no non-punctuation token).
  std::optional<double> fscore;
};

// Strict precedence: informal evidence, then casual, then formal, else
// casual by default.
FormalityLabel LabelFromEvidence(const std::vector<FeatureEvidence>& evidence);

LabeledSentence Classify(std::string_view text, const LexiconSet& lexicons);

// F = (noun% + adj% + prep% + art% - pron% - verb% - adv% - intj% + 100) / 2
// over non-punctuation tokens. Throws UndefinedStatistic when there are none.
double HdFormalityScore(const TaggedSentence& sentence);

struct CorpusLabelCounts {
  std::array<std::size_t, 3> counts{};
  std::size_t total = 0;

  std::size_t count(FormalityLabel label) const { return counts[LabelCode(label)]; }
  // 0 for an empty corpus.
  double proportion(FormalityLabel label) const;
};

CorpusLabelCounts ClassifyCorpus(const std::vector<std::string>& corpus,
                                 const LexiconSet& lexicons);

}  // namespace formality

#endif  // FORMALITY_CLASSIFIER_H_
