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

// Directional style-transfer evaluation.
//
// Rows of the confusion matrix are the intended target level (I->F targets
// formal, F->I targets informal); columns are the judged level.

#ifndef FORMALITY_TRANSFER_EVAL_H_
#define FORMALITY_TRANSFER_EVAL_H_

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "formality/classifier.h"
#include "formality/llm_gateway.h"
#include "formality/records.h"

namespace formality {

enum class BinaryLevel { kInformal = 0, kFormal = 1 };

std::string_view BinaryLevelName(BinaryLevel level);
BinaryLevel TargetOf(Direction direction);
// Casual and Informal both collapse to informal.
BinaryLevel Collapse(FormalityLabel label);

struct EvalRecord {
  std::string id;
  std::string source;
  Direction direction = Direction::kInformalToFormal;
  std::string generated;
  std::optional<BinaryLevel> judged;
  std::optional<int> fluency;
  std::optional<bool> meaning_preserved;

  bool correct() const { return judged && *judged == TargetOf(direction); }
};

// `text` is the generated sentence, provenance.source the input sentence.
EvalRecord EvalRecordFromDataset(const DatasetRecord& record);

// Must be safe to call from several threads.
class FormalityJudge {
 public:
  virtual ~FormalityJudge() = default;
  virtual BinaryLevel Judge(const std::string& sentence) = 0;
  virtual std::string name() const = 0;
};

class RuleJudge : public FormalityJudge {
 public:
  explicit RuleJudge(std::shared_ptr<const LexiconSet> lexicons);
  BinaryLevel Judge(const std::string& sentence) override;
  std::string name() const override { return "rule"; }

 private:
  std::shared_ptr<const LexiconSet> lexicons_;
};

class LlmBinaryJudge : public FormalityJudge {
 public:
  explicit LlmBinaryJudge(std::shared_ptr<Gateway> gateway) : gateway_(std::move(gateway)) {}
  BinaryLevel Judge(const std::string& sentence) override;
  std::string name() const override { return "llm-binary"; }

 private:
  std::shared_ptr<Gateway> gateway_;
};

class Llm3WayJudge : public FormalityJudge {
 public:
  explicit Llm3WayJudge(std::shared_ptr<Gateway> gateway) : gateway_(std::move(gateway)) {}
  BinaryLevel Judge(const std::string& sentence) override;
  std::string name() const override { return "llm-3way"; }

 private:
  std::shared_ptr<Gateway> gateway_;
};

class FluencyJudge {
 public:
  virtual ~FluencyJudge() = default;
  virtual int Score(const std::string& sentence) = 0;
};

class LlmFluencyJudge : public FluencyJudge {
 public:
  explicit LlmFluencyJudge(std::shared_ptr<Gateway> gateway) : gateway_(std::move(gateway)) {}
  int Score(const std::string& sentence) override { return gateway_->JudgeFluency(sentence); }

 private:
  std::shared_ptr<Gateway> gateway_;
};

struct SkippedRecord {
  std::string id;
  std::string reason;
};

struct JudgedRecords {
  std::vector<EvalRecord> records;  // input order, skipped ones removed
  std::vector<SkippedRecord> skipped;
};

// Records with empty output or a failed judge call are skipped. Throws
// DataError when nothing is left.
JudgedRecords JudgeRecords(std::vector<EvalRecord> records, FormalityJudge& judge,
                           int jobs = 1);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // records whose target is this class
};

struct EvalReport {
  std::string judge;
  // confusion[target][judged], indexed by BinaryLevel.
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  std::size_t total = 0;
  std::size_t skipped = 0;
  // Empty when the direction has no records.
  std::optional<ClassMetrics> formal;    // I->F
  std::optional<ClassMetrics> informal;  // F->I
  double accuracy = 0.0;
  std::optional<double> mean_fluency;
  std::size_t fluency_scored = 0;
  std::size_t fluency_skipped = 0;
  std::optional<double> meaning_rate;
  std::size_t meaning_total = 0;
  std::size_t meaning_excluded = 0;
};

// Precision is 0 when no record was judged as the class. Throws DataError
// for unjudged records or an empty input.
EvalReport DirectionalMetrics(const std::vector<EvalRecord>& records);

struct FluencyResult {
  std::optional<double> mean;  // empty when no record is correct
  std::size_t scored = 0;
  std::size_t skipped = 0;
};

// Scores only correctly transferred records, writing `fluency` on them.
FluencyResult FluencySummary(std::vector<EvalRecord>& records, FluencyJudge& judge,
                             int jobs = 1);

struct MeaningResult {
  std::optional<double> rate;
  std::size_t preserved = 0;
  std::size_t total = 0;
  std::size_t excluded = 0;
};

// Each entry holds one record's annotator votes; entries without exactly
// three votes are excluded and tallied.
MeaningResult MeaningPreservationRate(const std::vector<std::vector<bool>>& votes);

std::string FormatReport(const EvalReport& report);
nlohmann::ordered_json ReportToJson(const EvalReport& report);

}  // namespace formality

#endif  // FORMALITY_TRANSFER_EVAL_H_
