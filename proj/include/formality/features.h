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

// Stylistic marker detectors, one per tier of the formality decision tree.
//
// Informal tier: slang, netspeak, interjection, emoji (emoji tokens and
// ASCII emoticons), non-standard spelling, grammatical error.
// Casual tier: contraction, abbreviation, direct address.
// Formal tier: hedging, nominalization, passive voice.
//
// "Grammatical error" is a fixed heuristic subset: a lowercase pronoun "i",
// apostrophe-less contractions from a confusion list ("im", "dont"), and
// immediately repeated words. Sentence fragments are not flagged.

#ifndef FORMALITY_FEATURES_H_
#define FORMALITY_FEATURES_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "formality/lexicon.h"
#include "formality/text.h"

namespace formality {

enum class FeatureKind {
  kSlang,
  kNetspeak,
  kInterjection,
  kEmoji,
  kNonstandardSpelling,
  kGrammaticalError,
  kContraction,
  kAbbreviation,
  kDirectAddress,
  kHedging,
  kNominalization,
  kPassiveVoice,
};

enum class Tier { kInformal = 0, kCasual = 1, kFormal = 2 };

Tier TierOf(FeatureKind kind);
std::string_view FeatureName(FeatureKind kind);
std::string_view TierName(Tier tier);

// Code point offsets into the sentence text, end exclusive.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct FeatureEvidence {
  FeatureKind kind;
  Span span;
  std::string matched;

  bool operator==(const FeatureEvidence&) const = default;
};

std::vector<FeatureEvidence> DetectInformalMarkers(const TaggedSentence& sentence,
                                                   const LexiconSet& lexicons);
std::vector<FeatureEvidence> DetectCasualMarkers(const TaggedSentence& sentence,
                                                 const LexiconSet& lexicons);
std::vector<FeatureEvidence> DetectFormalMarkers(const TaggedSentence& sentence,
                                                 const LexiconSet& lexicons);

// All three detectors, informal first, each in text order.
std::vector<FeatureEvidence> DetectAllMarkers(const TaggedSentence& sentence,
                                              const LexiconSet& lexicons);

// Curated tables, exposed for tests and the review guidance payload.
bool IsContraction(std::string_view key);
bool IsConfusionForm(std::string_view key);
bool IsIrregularParticiple(std::string_view key);
bool IsEstablishedAbbreviation(std::string_view key);

}  // namespace formality

#endif  // FORMALITY_FEATURES_H_
