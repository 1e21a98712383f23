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

#include "formality/transfer_eval.h"

#include <mutex>

#include <fmt/format.h>

#include "formality/corpus_metrics.h"
#include "formality/error.h"
#include "formality/parallel.h"

namespace formality {
namespace {

constexpr int kFormal = static_cast<int>(BinaryLevel::kFormal);
constexpr int kInformal = static_cast<int>(BinaryLevel::kInformal);

ClassMetrics MetricsFor(const std::array<std::array<std::size_t, 2>, 2>& m, int c) {
  ClassMetrics out;
  const std::size_t correct = m[c][c];
  const std::size_t judged_as = m[0][c] + m[1][c];
  out.support = m[c][0] + m[c][1];
  out.precision = judged_as == 0 ? 0.0 : static_cast<double>(correct) / judged_as;
  out.recall = out.support == 0 ? 0.0 : static_cast<double>(correct) / out.support;
  const double sum = out.precision + out.recall;
  out.f1 = sum == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / sum;
  return out;
}

std::string Fixed4(const std::optional<double>& v) {
  return v ? fmt::format("{:.4f}", *v) : std::string("undefined");
}

nlohmann::ordered_json MetricsJson(const std::optional<ClassMetrics>& m) {
  if (!m) return nullptr;
  return {{"precision", m->precision},
          {"recall", m->recall},
          {"f1", m->f1},
          {"support", m->support}};
}

}  // namespace

std::string_view BinaryLevelName(BinaryLevel level) {
  return level == BinaryLevel::kFormal ? "formal" : "informal";
}

BinaryLevel TargetOf(Direction direction) {
  return direction == Direction::kInformalToFormal ? BinaryLevel::kFormal
                                                   : BinaryLevel::kInformal;
}

BinaryLevel Collapse(FormalityLabel label) {
  return label == FormalityLabel::kFormal ? BinaryLevel::kFormal : BinaryLevel::kInformal;
}

EvalRecord EvalRecordFromDataset(const DatasetRecord& record) {
  EvalRecord out;
  out.id = record.id;
  out.generated = record.text;
  if (!record.direction) {
    throw DataError(fmt::format("record '{}' has no direction", record.id));
  }
  out.direction = *record.direction;
  if (record.provenance && record.provenance->contains("source") &&
      (*record.provenance)["source"].is_string()) {
    out.source = (*record.provenance)["source"].get<std::string>();
  }
  return out;
}

RuleJudge::RuleJudge(std::shared_ptr<const LexiconSet> lexicons)
    : lexicons_(std::move(lexicons)) {
  if (!lexicons_) throw UsageError("rule judge needs lexicons");
}

BinaryLevel RuleJudge::Judge(const std::string& sentence) {
  return Collapse(Classify(sentence, *lexicons_).label);
}

BinaryLevel LlmBinaryJudge::Judge(const std::string& sentence) {
  return gateway_->JudgeBinary(sentence) == 1 ? BinaryLevel::kFormal : BinaryLevel::kInformal;
}

BinaryLevel Llm3WayJudge::Judge(const std::string& sentence) {
  return Collapse(gateway_->Judge3Way(sentence));
}

JudgedRecords JudgeRecords(std::vector<EvalRecord> records, FormalityJudge& judge, int jobs) {
  std::vector<std::optional<std::string>> failure(records.size());
  ParallelFor(records.size(), jobs, [&](std::size_t i) {
    EvalRecord& r = records[i];
    if (r.generated.find_first_not_of(" \t\r\n") == std::string::npos) {
      failure[i] = "empty generated text";
      return;
    }
    try {
      r.judged = judge.Judge(r.generated);
    } catch (const GatewayError& e) {
      failure[i] = e.what();
    }
  });
  JudgedRecords out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (failure[i]) {
      out.skipped.push_back({records[i].id, *failure[i]});
    } else {
      out.records.push_back(std::move(records[i]));
    }
  }
  if (out.records.empty()) {
    throw DataError(fmt::format("all {} records were skipped during judging", records.size()));
  }
  return out;
}

EvalReport DirectionalMetrics(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw DataError("no judged records to evaluate");
  EvalReport report;
  for (const EvalRecord& r : records) {
    if (!r.judged) throw DataError(fmt::format("record '{}' has not been judged", r.id));
    ++report.confusion[static_cast<int>(TargetOf(r.direction))][static_cast<int>(*r.judged)];
  }
  report.total = records.size();
  const auto& m = report.confusion;
  if (m[kFormal][0] + m[kFormal][1] > 0) report.formal = MetricsFor(m, kFormal);
  if (m[kInformal][0] + m[kInformal][1] > 0) report.informal = MetricsFor(m, kInformal);
  report.accuracy =
      static_cast<double>(m[kFormal][kFormal] + m[kInformal][kInformal]) / report.total;
  return report;
}

FluencyResult FluencySummary(std::vector<EvalRecord>& records, FluencyJudge& judge, int jobs) {
  std::vector<std::size_t> correct;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].judged) {
      throw DataError(fmt::format("record '{}' has not been judged", records[i].id));
    }
    if (records[i].correct()) correct.push_back(i);
  }
  ParallelFor(correct.size(), jobs, [&](std::size_t k) {
    EvalRecord& r = records[correct[k]];
    try {
      r.fluency = judge.Score(r.generated);
    } catch (const GatewayError&) {
      r.fluency.reset();
    }
  });
  FluencyResult out;
  long sum = 0;
  for (std::size_t i : correct) {
    if (records[i].fluency) {
      sum += *records[i].fluency;
      ++out.scored;
    } else {
      ++out.skipped;
    }
  }
  if (out.scored > 0) out.mean = static_cast<double>(sum) / out.scored;
  return out;
}

MeaningResult MeaningPreservationRate(const std::vector<std::vector<bool>>& votes) {
  MeaningResult out;
  for (const auto& v : votes) {
    if (v.size() != 3) {
      ++out.excluded;
      continue;
    }
    ++out.total;
    if (*MajorityVote(v).winner) ++out.preserved;
  }
  if (out.total > 0) out.rate = static_cast<double>(out.preserved) / out.total;
  return out;
}

std::string FormatReport(const EvalReport& r) {
  std::string out;
  out += fmt::format("judge: {}\n", r.judge);
  out += fmt::format("records: {} (skipped {})\n", r.total, r.skipped);
  out += fmt::format("{:<10}{:>8}{:>12}{:>10}{:>10}\n", "direction", "n", "precision", "recall",
                     "f1");
  auto row = [&](std::string_view name, const std::optional<ClassMetrics>& m) {
    if (!m) {
      out += fmt::format("{:<10}{:>8}{:>12}{:>10}{:>10}\n", name, 0, "undefined", "undefined",
                         "undefined");
      return;
    }
    out += fmt::format("{:<10}{:>8}{:>12.4f}{:>10.4f}{:>10.4f}\n", name, m->support,
                       m->precision, m->recall, m->f1);
  };
  row("F->I", r.informal);
  row("I->F", r.formal);
  out += fmt::format("accuracy: {:.4f}\n", r.accuracy);
  out += fmt::format("confusion (target x judged informal/formal): I->F [{} {}] F->I [{} {}]\n",
                     r.confusion[kFormal][kInformal], r.confusion[kFormal][kFormal],
                     r.confusion[kInformal][kInformal], r.confusion[kInformal][kFormal]);
  out += fmt::format("fluency (correct subset, n={}): {}\n", r.fluency_scored,
                     Fixed4(r.mean_fluency));
  out += fmt::format("meaning preservation (n={}): {}\n", r.meaning_total,
                     Fixed4(r.meaning_rate));
  return out;
}

nlohmann::ordered_json ReportToJson(const EvalReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  return {
      {"judge", r.judge},
      {"total", r.total},
      {"skipped", r.skipped},
      {"confusion",
       {{"I->F", {{"informal", r.confusion[kFormal][kInformal]},
                  {"formal", r.confusion[kFormal][kFormal]}}},
        {"F->I", {{"informal", r.confusion[kInformal][kInformal]},
                  {"formal", r.confusion[kInformal][kFormal]}}}}},
      {"F->I", MetricsJson(r.informal)},
      {"I->F", MetricsJson(r.formal)},
      {"accuracy", r.accuracy},
      {"accuracy_text", fmt::format("{:.4f}", r.accuracy)},
      {"mean_fluency", opt(r.mean_fluency)},
      {"fluency_scored", r.fluency_scored},
      {"meaning_rate", opt(r.meaning_rate)},
      {"meaning_total", r.meaning_total},
      {"meaning_excluded", r.meaning_excluded},
  };
}

}  // namespace formality
