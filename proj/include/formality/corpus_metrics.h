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

// Corpus integrity and agreement statistics.

#ifndef FORMALITY_CORPUS_METRICS_H_
#define FORMALITY_CORPUS_METRICS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "formality/classifier.h"
#include "formality/error.h"

namespace formality {

struct NgramOptions {
  bool lowercase = true;
  bool include_punctuation = true;
  // Train n-gram extraction is sharded over this many workers.
  int jobs = 1;
};

struct NgramOverlap {
  double ratio = 0.0;
  std::size_t test_ngrams = 0;  // unique
  std::size_t shared = 0;
  // Set when the test side yields no n-gram at all; ratio is then 0.
  bool empty_test_warning = false;
};

// |unique test n-grams ∩ train n-grams| / |unique test n-grams|.
// Throws UsageError for n < 1 and DataError for an empty test corpus.
NgramOverlap ComputeNgramOverlap(const std::vector<std::string>& train,
                                 const std::vector<std::string>& test, int n,
                                 const NgramOptions& options = {});

struct NgramOverlapReport {
  std::string train_id;
  std::string test_id;
  std::array<NgramOverlap, 5> per_n;  // index 0 is n = 1
};

NgramOverlapReport ComputeOverlapReport(const std::vector<std::string>& train,
                                        const std::vector<std::string>& test,
                                        std::string train_id, std::string test_id,
                                        const NgramOptions& options = {});

struct LevelText {
  FormalityLabel level;
  std::string text;
};

struct LevelStats {
  std::size_t count = 0;
  double mean_chars = 0.0;
  double mean_words = 0.0;
};

struct CorpusStats {
  std::array<LevelStats, 3> levels;  // indexed by label code
  const LevelStats& of(FormalityLabel label) const { return levels[LabelCode(label)]; }
};

// Characters are Unicode scalars of the raw text, whitespace included;
// words are whitespace-separated chunks.
CorpusStats SentenceStats(const std::vector<LevelText>& corpus);
std::size_t CharCount(const std::string& text);
std::size_t WordCount(const std::string& text);

// ratings[item][annotator] holds a category name. Every row must have the
// same length n >= 2 and every value must be a listed category. Throws
// DataError for malformed input and UndefinedStatistic when chance
// agreement is 1.
double FleissKappa(const std::vector<std::vector<std::string>>& ratings,
                   const std::vector<std::string>& categories);

// counts[item][category] = annotators assigning that category.
double FleissKappaFromCounts(const std::vector<std::vector<std::size_t>>& counts);

// 2-of-3 vote. `winner` is empty on a three-way split.
template <typename T>
struct Vote {
  std::optional<T> winner;
  bool escalated() const { return !winner.has_value(); }
};

template <typename T>
Vote<T> MajorityVote(const std::vector<T>& labels) {
  if (labels.size() != 3) {
    throw DataError("majority vote needs exactly 3 labels, got " +
                    std::to_string(labels.size()));
  }
  if (labels[0] == labels[1] || labels[0] == labels[2]) return {labels[0]};
  if (labels[1] == labels[2]) return {labels[1]};
  return {};
}

}  // namespace formality

#endif  // FORMALITY_CORPUS_METRICS_H_
