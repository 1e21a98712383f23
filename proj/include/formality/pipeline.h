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

// Casual-anchored dataset construction: anchors are rewritten outward to a
// formal and an informal variant, each gated by the rule classifier with a
// bounded revision loop.

#ifndef FORMALITY_PIPELINE_H_
#define FORMALITY_PIPELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "formality/classifier.h"
#include "formality/error.h"
#include "formality/llm_gateway.h"
#include "formality/records.h"

namespace formality {

enum class TripleStatus { kDraft, kValidated, kInReview, kAccepted, kRejected };

std::string_view TripleStatusName(TripleStatus status);
std::optional<TripleStatus> ParseTripleStatus(std::string_view name);

struct VariantProvenance {
  PromptId prompt = PromptId::kRewriteCasualToFormal;
  int revision_rounds = 0;
  // Rule-classifier label of every draft, in order.
  std::vector<FormalityLabel> judge_decisions;
  std::optional<std::string> failure;

  bool operator==(const VariantProvenance&) const = default;
};

struct StyleTriple {
  std::string id;
  std::string anchor;
  std::string formal;
  std::string informal;
  TripleStatus status = TripleStatus::kDraft;
  VariantProvenance formal_provenance;
  VariantProvenance informal_provenance;
  std::string source;

  bool operator==(const StyleTriple&) const = default;
};

nlohmann::ordered_json TripleToJson(const StyleTriple& triple);
StyleTriple TripleFromJson(const nlohmann::json& json);
void WriteTriples(const std::filesystem::path& path, const std::vector<StyleTriple>& triples);
std::vector<StyleTriple> ReadTriples(const std::filesystem::path& path);

// Thrown when the gateway fails mid-build; carries the draft built so far.
class TripleBuildError : public GatewayError {
 public:
  TripleBuildError(StyleTriple draft, const std::string& what)
      : GatewayError(what), draft_(std::move(draft)) {}
  const StyleTriple& draft() const { return draft_; }

 private:
  StyleTriple draft_;
};

// Three-level judge used for anchor extraction.
class LabelJudge {
 public:
  virtual ~LabelJudge() = default;
  virtual FormalityLabel Label(const std::string& sentence) = 0;
  virtual std::string name() const = 0;
};

class RuleLabelJudge : public LabelJudge {
 public:
  explicit RuleLabelJudge(std::shared_ptr<const LexiconSet> lexicons)
      : lexicons_(std::move(lexicons)) {}
  FormalityLabel Label(const std::string& sentence) override {
    return Classify(sentence, *lexicons_).label;
  }
  std::string name() const override { return "rule"; }

 private:
  std::shared_ptr<const LexiconSet> lexicons_;
};

class LlmLabelJudge : public LabelJudge {
 public:
  explicit LlmLabelJudge(std::shared_ptr<Gateway> gateway) : gateway_(std::move(gateway)) {}
  FormalityLabel Label(const std::string& sentence) override {
    return gateway_->Judge3Way(sentence);
  }
  std::string name() const override { return "llm-3way"; }

 private:
  std::shared_ptr<Gateway> gateway_;
};

struct AnchorExtraction {
  std::vector<std::string> anchors;  // corpus order
  std::array<std::size_t, 3> tally{};  // per judged label
  std::size_t failed = 0;             // judge errors
};

AnchorExtraction ExtractCasualAnchors(const std::vector<std::string>& corpus, LabelJudge& judge,
                                      int jobs = 1);

struct BuildOptions {
  int max_revisions = 3;
  std::string source = "corpus";
};

// Validated when both variants pass the classifier, draft otherwise.
// Throws TripleBuildError on gateway failure.
StyleTriple BuildTriple(const std::string& id, const std::string& anchor, Gateway& gateway,
                        const LexiconSet& lexicons, const BuildOptions& options = {});

// Gateway failures become drafts. Output is in id order.
std::vector<StyleTriple> BuildTriples(const std::vector<std::string>& anchors, Gateway& gateway,
                                      const LexiconSet& lexicons, const BuildOptions& options,
                                      int jobs = 1);

std::string TripleId(std::size_t index);

struct NaivePair {
  std::string id;
  std::string informal;
  std::string formal;
  TripleStatus status = TripleStatus::kDraft;
  VariantProvenance provenance;
};

// Single rewrite, no revision. Throws DataError if the input is not
// Informal under the rule classifier.
NaivePair BuildNaivePair(const std::string& id, const std::string& informal, Gateway& gateway,
                         const LexiconSet& lexicons);

struct DatasetManifest {
  std::string split;
  std::array<std::size_t, 3> counts{};
  std::vector<std::string> source_ids;
  nlohmann::ordered_json config;
  std::string config_digest;
};

nlohmann::ordered_json ManifestToJson(const DatasetManifest& manifest);

struct Dataset {
  DatasetManifest manifest;
  std::vector<DatasetRecord> records;
};

struct AssemblyOptions {
  std::size_t quota = 0;
  std::string split = "train";
  // Treat validated triples as accepted (no review stage).
  bool accept_validated = false;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
};

// Picks the first `quota` eligible triples by id and emits one record per
// level. Throws DataError "need N accepted triples, have M" on shortfall.
Dataset AssembleDataset(const std::vector<StyleTriple>& triples, const AssemblyOptions& options);

Dataset AssembleNaiveDataset(const std::vector<NaivePair>& pairs, const AssemblyOptions& options);

struct PoolItem {
  std::string id;
  std::string text;
  std::optional<double> score;  // in [-3, 3]
};

// JSONL objects {id?, text, score?} or plain text lines.
std::vector<PoolItem> ReadPool(const std::filesystem::path& path);

struct TestSetOptions {
  std::size_t per_side = 200;
  bool score_filter = true;
  std::uint64_t seed = 0;
  std::string split = "test";
};

// Formal-side items need a strictly positive score when filtering; unscored
// items are dropped. Throws DataError when a pool is too small.
Dataset AssembleTestSet(const std::vector<PoolItem>& informal_pool,
                        const std::vector<PoolItem>& formal_pool, const TestSetOptions& options);

// Uniform index in [0, bound) and k-of-n sampling, stable across platforms.
std::uint64_t UniformIndex(std::uint64_t bound, std::mt19937_64& rng);
std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k, std::mt19937_64& rng);

struct AuditViolation {
  std::string id;
  FormalityLabel expected;
  FormalityLabel actual;
  std::string text;
};

// Records whose stored level disagrees with the rule classifier, plus
// triples that repeat a sentence across levels.
std::vector<AuditViolation> AuditRecords(const std::vector<DatasetRecord>& records,
                                         const LexiconSet& lexicons);
std::vector<std::string> AuditTripleTexts(const std::vector<DatasetRecord>& records);

}  // namespace formality

#endif  // FORMALITY_PIPELINE_H_
