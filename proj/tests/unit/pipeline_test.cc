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

#include <chrono>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "formality/error.h"
#include "formality/pipeline.h"
#include "test_support.h"

namespace formality {
namespace {

using testing::Lexicons;
using testing::TempDir;

constexpr const char* kAnchor = "You can't leave the plan like that.";
constexpr const char* kFormal = "It appears that the plan was abandoned.";
constexpr const char* kInformal = "lol the plan is sooo done";
constexpr const char* kStillCasual = "You shouldn't leave the plan.";

struct Rig {
  Rig() : stub(std::make_shared<StubTransport>()), gateway({}, stub, [](std::chrono::milliseconds) {}) {}
  std::shared_ptr<StubTransport> stub;
  Gateway gateway;
};

TEST(BuildTripleTest, NoRevisionNeeded) {
  Rig rig;
  rig.stub->Script(PromptId::kRewriteCasualToFormal, kAnchor, std::vector<std::string>{kFormal});
  rig.stub->Script(PromptId::kRewriteCasualToInformal, kAnchor, std::vector<std::string>{kInformal});
  const StyleTriple t = BuildTriple("t000001", kAnchor, rig.gateway, *Lexicons());
  EXPECT_EQ(t.status, TripleStatus::kValidated);
  EXPECT_EQ(t.formal, kFormal);
  EXPECT_EQ(t.informal, kInformal);
  EXPECT_EQ(t.formal_provenance.revision_rounds, 0);
  EXPECT_EQ(t.formal_provenance.judge_decisions, std::vector<FormalityLabel>{FormalityLabel::kFormal});
  EXPECT_EQ(rig.stub->calls(), 2u);
}

TEST(BuildTripleTest, TwoRevisionRounds) {
  Rig rig;
  rig.stub->Script(PromptId::kRewriteCasualToFormal, kAnchor, std::vector<std::string>{kStillCasual});
  rig.stub->Script(PromptId::kRevisionFormal, kAnchor,
                   std::vector<std::string>{kStillCasual, kFormal});
  rig.stub->Script(PromptId::kRewriteCasualToInformal, kAnchor, std::vector<std::string>{kInformal});
  const StyleTriple t = BuildTriple("t000001", kAnchor, rig.gateway, *Lexicons());
  EXPECT_EQ(t.status, TripleStatus::kValidated);
  EXPECT_EQ(t.formal_provenance.revision_rounds, 2);
  EXPECT_EQ(t.formal_provenance.judge_decisions,
            (std::vector<FormalityLabel>{FormalityLabel::kCasual, FormalityLabel::kCasual,
                                         FormalityLabel::kFormal}));
  EXPECT_EQ(t.informal_provenance.revision_rounds, 0);
}

TEST(BuildTripleTest, ExhaustedRevisionsLeaveDraft) {
  Rig rig;
  rig.stub->Script(PromptId::kRewriteCasualToFormal, kAnchor, std::vector<std::string>{kFormal});
  rig.stub->Script(PromptId::kRewriteCasualToInformal, kAnchor, std::vector<std::string>{kStillCasual});
  rig.stub->Script(PromptId::kRevisionInformal, kAnchor, std::vector<std::string>{kStillCasual});
  BuildOptions opts;
  opts.max_revisions = 3;
  const StyleTriple t = BuildTriple("t000001", kAnchor, rig.gateway, *Lexicons(), opts);
  EXPECT_EQ(t.status, TripleStatus::kDraft);
  EXPECT_EQ(t.informal_provenance.revision_rounds, 3);
  EXPECT_EQ(t.informal_provenance.judge_decisions.size(), 4u);
  ASSERT_TRUE(t.informal_provenance.failure.has_value());
  EXPECT_FALSE(t.formal_provenance.failure.has_value());
  EXPECT_EQ(rig.stub->calls(), 5u);
}

TEST(BuildTripleTest, ZeroCapMeansSingleAttempt) {
  Rig rig;
  rig.stub->Script(PromptId::kRewriteCasualToFormal, kAnchor, std::vector<std::string>{kStillCasual});
  rig.stub->Script(PromptId::kRewriteCasualToInformal, kAnchor, std::vector<std::string>{kInformal});
  BuildOptions opts;
  opts.max_revisions = 0;
  const StyleTriple t = BuildTriple("t1", kAnchor, rig.gateway, *Lexicons(), opts);
  EXPECT_EQ(t.status, TripleStatus::kDraft);
  EXPECT_EQ(t.formal_provenance.revision_rounds, 0);
}

TEST(BuildTripleTest, GatewayFailureCarriesDraft) {
  Rig rig;
  rig.stub->Script(PromptId::kRewriteCasualToFormal, kAnchor, std::vector<std::string>{kFormal});
  try {
    BuildTriple("t1", kAnchor, rig.gateway, *Lexicons());
    FAIL();
  } catch (const TripleBuildError& e) {
    EXPECT_EQ(e.draft().formal, kFormal);
    EXPECT_EQ(e.draft().status, TripleStatus::kDraft);
    EXPECT_TRUE(e.draft().informal_provenance.failure.has_value());
  }
  const auto all = BuildTriples({kAnchor}, rig.gateway, *Lexicons(), {});
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].status, TripleStatus::kDraft);
}

TEST(ExtractAnchorsTest, KeepsCasualInOrder) {
  RuleLabelJudge judge(Lexicons());
  const auto r = ExtractCasualAnchors(
      {"lol", "You can't.", "It was adopted.", "The meeting starts at noon."}, judge, 2);
  EXPECT_EQ(r.anchors, (std::vector<std::string>{"You can't.", "The meeting starts at noon."}));
  EXPECT_EQ(r.tally, (std::array<std::size_t, 3>{1, 2, 1}));
}

StyleTriple MakeTriple(const std::string& id, TripleStatus status) {
  StyleTriple t;
  t.id = id;
  t.anchor = "anchor " + id;
  t.formal = "formal " + id;
  t.informal = "informal " + id;
  t.status = status;
  return t;
}

TEST(AssembleDatasetTest, QuotaArithmetic) {
  AssemblyOptions opts;
  opts.quota = 1;
  const Dataset d = AssembleDataset(
      {MakeTriple("t2", TripleStatus::kAccepted), MakeTriple("t1", TripleStatus::kAccepted)}, opts);
  ASSERT_EQ(d.records.size(), 3u);
  EXPECT_EQ(d.manifest.counts, (std::array<std::size_t, 3>{1, 1, 1}));
  EXPECT_EQ(d.manifest.source_ids, std::vector<std::string>{"t1"});
  EXPECT_EQ(d.records[0].triple_id, "t1");
  EXPECT_EQ(d.manifest.config_digest.size(), 64u);
}

TEST(AssembleDatasetTest, ShortfallMessage) {
  AssemblyOptions opts;
  opts.quota = 5;
  std::vector<StyleTriple> triples = {MakeTriple("a", TripleStatus::kAccepted),
                                      MakeTriple("b", TripleStatus::kAccepted),
                                      MakeTriple("c", TripleStatus::kAccepted),
                                      MakeTriple("d", TripleStatus::kValidated)};
  try {
    AssembleDataset(triples, opts);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "need 5 accepted triples, have 3");
  }
  opts.quota = 4;
  opts.accept_validated = true;
  EXPECT_EQ(AssembleDataset(triples, opts).records.size(), 12u);
}

TEST(AssembleDatasetTest, DigestFollowsConfig) {
  AssemblyOptions a;
  a.quota = 1;
  a.config = {{"seed", 1}};
  AssemblyOptions b = a;
  b.config = {{"seed", 2}};
  const std::vector<StyleTriple> t = {MakeTriple("t1", TripleStatus::kAccepted)};
  EXPECT_EQ(AssembleDataset(t, a).manifest.config_digest,
            AssembleDataset(t, a).manifest.config_digest);
  EXPECT_NE(AssembleDataset(t, a).manifest.config_digest,
            AssembleDataset(t, b).manifest.config_digest);
}

TEST(TripleJsonTest, RoundTrip) {
  TempDir dir;
  StyleTriple t = MakeTriple("t000007", TripleStatus::kDraft);
  t.formal_provenance.revision_rounds = 2;
  t.formal_provenance.judge_decisions = {FormalityLabel::kCasual, FormalityLabel::kFormal};
  t.informal_provenance.prompt = PromptId::kRewriteCasualToInformal;
  t.informal_provenance.failure = "classified Casual";
  t.source = "corpus.txt";
  WriteTriples(dir / "t.jsonl", {t});
  EXPECT_EQ(ReadTriples(dir / "t.jsonl"), std::vector<StyleTriple>{t});
}

TEST(NaivePairTest, RequiresInformalInput) {
  Rig rig;
  EXPECT_THROW(BuildNaivePair("n1", "You can't.", rig.gateway, *Lexicons()), DataError);
  rig.stub->Script(PromptId::kRewriteInformalToFormalNaive, "lol ok", std::vector<std::string>{kFormal});
  const NaivePair p = BuildNaivePair("n1", "lol ok", rig.gateway, *Lexicons());
  EXPECT_EQ(p.status, TripleStatus::kValidated);
  EXPECT_EQ(p.formal, kFormal);
}

std::vector<PoolItem> Pool(const std::string& prefix, int n, bool scored) {
  std::vector<PoolItem> out;
  for (int i = 0; i < n; ++i) {
    PoolItem p{prefix + std::to_string(i), "text " + std::to_string(i), std::nullopt};
    if (scored) p.score = (i % 4) - 1.0;  // -1, 0, 1, 2
    out.push_back(p);
  }
  return out;
}

TEST(TestSetTest, SeededAndFiltered) {
  TestSetOptions opts;
  opts.per_side = 5;
  opts.seed = 99;
  const auto informal = Pool("i", 30, false);
  const auto formal = Pool("f", 40, true);
  const Dataset a = AssembleTestSet(informal, formal, opts);
  const Dataset b = AssembleTestSet(informal, formal, opts);
  ASSERT_EQ(a.records.size(), 10u);
  EXPECT_EQ(SerializeRecords(a.records), SerializeRecords(b.records));
  for (const auto& r : a.records) {
    if (r.direction == Direction::kFormalToInformal) {
      ASSERT_GT(r.provenance->at("score").get<double>(), 0.0);
      EXPECT_EQ(r.level, FormalityLabel::kFormal);
    } else {
      EXPECT_EQ(r.level, FormalityLabel::kInformal);
    }
  }
  opts.seed = 100;
  EXPECT_NE(SerializeRecords(AssembleTestSet(informal, formal, opts).records),
            SerializeRecords(a.records));
  opts.per_side = 25;
  EXPECT_THROW(AssembleTestSet(informal, formal, opts), DataError);
}

TEST(SampleIndicesProperty, DistinctSortedInRange) {
  std::mt19937_64 rng(5);
  testing::Gen gen(6);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.Int(0, 50));
    const std::size_t k = static_cast<std::size_t>(gen.Int(0, static_cast<int>(n)));
    const auto idx = SampleIndices(n, k, rng);
    ASSERT_EQ(idx.size(), k);
    ASSERT_TRUE(std::is_sorted(idx.begin(), idx.end()));
    ASSERT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), k);
    for (auto i : idx) ASSERT_LT(i, n);
  }
}

TEST(SampleIndicesTest, RoughlyUniform) {
  std::mt19937_64 rng(7);
  std::vector<int> hits(10, 0);
  for (int trial = 0; trial < 20000; ++trial) {
    for (auto i : SampleIndices(10, 3, rng)) ++hits[i];
  }
  for (int h : hits) EXPECT_NEAR(h, 6000, 300);
}

TEST(AuditTest, FlagsLevelMismatchAndRepeats) {
  std::vector<DatasetRecord> records = {
      {"t1-informal", "lol", FormalityLabel::kInformal, "train", "t1", std::nullopt, std::nullopt},
      {"t1-casual", "lol", FormalityLabel::kCasual, "train", "t1", std::nullopt, std::nullopt},
      {"t1-formal", "It was adopted.", FormalityLabel::kFormal, "train", "t1", std::nullopt,
       std::nullopt}};
  const auto v = AuditRecords(records, *Lexicons());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].id, "t1-casual");
  EXPECT_EQ(AuditTripleTexts(records).size(), 1u);
}

}  // namespace
}  // namespace formality
