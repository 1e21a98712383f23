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

#include "formality/classifier.h"

#include <algorithm>

#include "formality/error.h"

namespace formality {

std::string_view LabelName(FormalityLabel label) {
  switch (label) {
    case FormalityLabel::kInformal:
      return "Informal";
    case FormalityLabel::kCasual:
      return "Casual";
    case FormalityLabel::kFormal:
      return "Formal";
  }
  return "Unknown";
}

std::optional<FormalityLabel> LabelFromInt(long value) {
  if (value < 0 || value > 2) return std::nullopt;
  return static_cast<FormalityLabel>(value);
}

std::optional<FormalityLabel> ParseLabel(std::string_view text) {
  if (text.size() == 1 && text[0] >= '0' && text[0] <= '2') {
    return static_cast<FormalityLabel>(text[0] - '0');
  }
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "informal") return FormalityLabel::kInformal;
  if (lower == "casual") return FormalityLabel::kCasual;
  if (lower == "formal") return FormalityLabel::kFormal;
  return std::nullopt;
}

FormalityLabel LabelFromEvidence(const std::vector<FeatureEvidence>& evidence) {
  bool casual = false;
  bool formal = false;
  for (const FeatureEvidence& e : evidence) {
    switch (TierOf(e.kind)) {
      case Tier::kInformal:
        return FormalityLabel::kInformal;
      case Tier::kCasual:
        casual = true;
        break;
      case Tier::kFormal:
        formal = true;
        break;
    }
  }
  if (casual) return FormalityLabel::kCasual;
  if (formal) return FormalityLabel::kFormal;
  return FormalityLabel::kCasual;
}

LabeledSentence Classify(std::string_view text, const LexiconSet& lexicons) {
  LabeledSentence out;
  out.sentence = Analyze(text, lexicons);
  out.evidence = DetectAllMarkers(out.sentence, lexicons);
  out.label = LabelFromEvidence(out.evidence);
  try {
    out.fscore = HdFormalityScore(out.sentence);
  } catch (const UndefinedStatistic&) {
    out.fscore.reset();
  }
  return out;
}

double HdFormalityScore(const TaggedSentence& sentence) {
  // Accumulate signed counts, divide once.
  long plus = 0;
  long minus = 0;
  long total = 0;
  for (const Token& t : sentence.tokens) {
    if (!t.pos) throw UsageError("formality score needs a tagged sentence");
    switch (*t.pos) {
      case Pos::kPunctuation:
        continue;
      case Pos::kNoun:
      case Pos::kAdjective:
      case Pos::kPreposition:
      case Pos::kArticle:
        ++plus;
        break;
      case Pos::kPronoun:
      case Pos::kVerb:
      case Pos::kAdverb:
      case Pos::kInterjection:
        ++minus;
        break;
      default:
        break;
    }
    ++total;
  }
  if (total == 0) {
    throw UndefinedStatistic("formality score undefined: no non-punctuation tokens");
  }
  return (100.0 * static_cast<double>(plus - minus) / static_cast<double>(total) + 100.0) /
         2.0;
}

double CorpusLabelCounts::proportion(FormalityLabel label) const {
  return total == 0 ? 0.0 : static_cast<double>(count(label)) / static_cast<double>(total);
}

CorpusLabelCounts ClassifyCorpus(const std::vector<std::string>& corpus,
                                 const LexiconSet& lexicons) {
  CorpusLabelCounts out;
  for (const std::string& text : corpus) {
    ++out.counts[LabelCode(Classify(text, lexicons).label)];
    ++out.total;
  }
  return out;
}

}  // namespace formality
