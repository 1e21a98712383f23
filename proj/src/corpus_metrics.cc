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

#include "formality/corpus_metrics.h"

#include <algorithm>
#include <future>
#include <unordered_set>

#include <fmt/format.h>

#include "formality/text.h"
#include "formality/unicode.h"

namespace formality {
namespace {

using NgramSet = std::unordered_set<std::string>;

std::vector<std::string> Units(const std::string& sentence, const NgramOptions& options) {
  std::vector<std::string> units;
  for (const Token& t : Tokenize(sentence).tokens) {
    if (!options.include_punctuation && t.kind == TokenKind::kPunctuation) continue;
    units.push_back(options.lowercase ? unicode::NormalizeKey(t.surface) : t.surface);
  }
  return units;
}

// Length-prefixed join, so no token content can collide with a separator.
void AddNgrams(const std::string& sentence, int n, const NgramOptions& options,
               NgramSet& out) {
  const std::vector<std::string> units = Units(sentence, options);
  const std::size_t width = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + width <= units.size(); ++i) {
    std::string key;
    for (std::size_t k = i; k < i + width; ++k) {
      key += std::to_string(units[k].size());
      key += ':';
      key += units[k];
    }
    out.insert(std::move(key));
  }
}

NgramSet TrainNgrams(const std::vector<std::string>& train, int n,
                     const NgramOptions& options) {
  const std::size_t jobs =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.jobs, 1)), 1,
                              std::max<std::size_t>(train.size(), 1));
  if (jobs == 1) {
    NgramSet set;
    for (const auto& s : train) AddNgrams(s, n, options, set);
    return set;
  }
  std::vector<std::future<NgramSet>> shards;
  const std::size_t per = (train.size() + jobs - 1) / jobs;
  for (std::size_t begin = 0; begin < train.size(); begin += per) {
    const std::size_t end = std::min(train.size(), begin + per);
    shards.push_back(std::async(std::launch::async, [&, begin, end] {
      NgramSet set;
      for (std::size_t i = begin; i < end; ++i) AddNgrams(train[i], n, options, set);
      return set;
    }));
  }
  NgramSet merged;
  for (auto& f : shards) merged.merge(f.get());
  return merged;
}

}  // namespace

NgramOverlap ComputeNgramOverlap(const std::vector<std::string>& train,
                                 const std::vector<std::string>& test, int n,
                                 const NgramOptions& options) {
  if (n < 1) throw UsageError(fmt::format("n-gram order must be >= 1, got {}", n));
  if (test.empty()) throw DataError("test corpus is empty");
  NgramSet test_set;
  for (const auto& s : test) AddNgrams(s, n, options, test_set);
  NgramOverlap out;
  out.test_ngrams = test_set.size();
  if (test_set.empty()) {
    out.empty_test_warning = true;
    return out;
  }
  const NgramSet train_set = TrainNgrams(train, n, options);
  for (const auto& g : test_set) out.shared += train_set.contains(g) ? 1 : 0;
  out.ratio = static_cast<double>(out.shared) / static_cast<double>(out.test_ngrams);
  return out;
}

NgramOverlapReport ComputeOverlapReport(const std::vector<std::string>& train,
                                        const std::vector<std::string>& test,
                                        std::string train_id, std::string test_id,
                                        const NgramOptions& options) {
  NgramOverlapReport report{std::move(train_id), std::move(test_id), {}};
  for (int n = 1; n <= 5; ++n) {
    report.per_n[n - 1] = ComputeNgramOverlap(train, test, n, options);
  }
  return report;
}

std::size_t CharCount(const std::string& text) { return unicode::ScalarCount(text); }

std::size_t WordCount(const std::string& text) {
  std::size_t words = 0;
  bool in_word = false;
  for (const auto& cp : unicode::Decode(text)) {
    const bool ws = unicode::IsWhitespace(cp.value);
    if (!ws && !in_word) ++words;
    in_word = !ws;
  }
  return words;
}

CorpusStats SentenceStats(const std::vector<LevelText>& corpus) {
  CorpusStats stats;
  std::array<double, 3> chars{};
  std::array<double, 3> words{};
  for (const LevelText& item : corpus) {
    const int code = LabelCode(item.level);
    ++stats.levels[code].count;
    chars[code] += static_cast<double>(CharCount(item.text));
    words[code] += static_cast<double>(WordCount(item.text));
  }
  for (int i = 0; i < 3; ++i) {
    LevelStats& level = stats.levels[i];
    if (level.count == 0) continue;
    level.mean_chars = chars[i] / static_cast<double>(level.count);
    level.mean_words = words[i] / static_cast<double>(level.count);
  }
  return stats;
}

double FleissKappaFromCounts(const std::vector<std::vector<std::size_t>>& counts) {
  if (counts.empty()) throw DataError("kappa needs at least one item");
  const std::size_t k = counts.front().size();
  if (k == 0) throw DataError("kappa needs at least one category");
  std::size_t raters = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].size() != k) throw DataError(fmt::format("item {} has a different category count", i));
    std::size_t row = 0;
    for (std::size_t c : counts[i]) row += c;
    if (i == 0) raters = row;
    if (row != raters) {
      throw DataError(fmt::format("ragged ratings: item {} has {} ratings, expected {}", i,
                                  row, raters));
    }
  }
  if (raters < 2) throw DataError("kappa needs at least 2 ratings per item");

  const double n = static_cast<double>(raters);
  const double items = static_cast<double>(counts.size());
  std::vector<double> column(k, 0.0);
  double p_bar = 0.0;
  for (const auto& row : counts) {
    double agree = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double c = static_cast<double>(row[j]);
      agree += c * (c - 1.0);
      column[j] += c;
    }
    p_bar += agree / (n * (n - 1.0));
  }
  p_bar /= items;
  double p_e = 0.0;
  for (double c : column) {
    const double p = c / (items * n);
    p_e += p * p;
  }
  if (p_e >= 1.0) {
    throw UndefinedStatistic("kappa undefined: every rating falls in one category");
  }
  if (p_bar == 1.0) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

double FleissKappa(const std::vector<std::vector<std::string>>& ratings,
                   const std::vector<std::string>& categories) {
  std::vector<std::vector<std::size_t>> counts;
  counts.reserve(ratings.size());
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    if (i > 0 && ratings[i].size() != ratings[0].size()) {
      throw DataError(fmt::format("ragged ratings: item {} has {} ratings, expected {}", i,
                                  ratings[i].size(), ratings[0].size()));
    }
    std::vector<std::size_t> row(categories.size(), 0);
    for (const std::string& label : ratings[i]) {
      auto it = std::find(categories.begin(), categories.end(), label);
      if (it == categories.end()) {
        throw DataError(fmt::format("rating '{}' is not a listed category", label));
      }
      ++row[static_cast<std::size_t>(it - categories.begin())];
    }
    counts.push_back(std::move(row));
  }
  return FleissKappaFromCounts(counts);
}

}  // namespace formality
