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

#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "formality/error.h"
#include "formality/review.h"
#include "test_support.h"

namespace formality {
namespace {

using nlohmann::json;
using testing::Lexicons;
using testing::TempDir;

StyleTriple Triple(const std::string& id) {
  StyleTriple t;
  t.id = id;
  t.anchor = "You can't leave the plan like that.";
  t.formal = "It appears that the plan was abandoned.";
  t.informal = "lol the plan is sooo done";
  t.status = TripleStatus::kValidated;
  return t;
}

Verdict Accept() { return {}; }
Verdict Relabel(FormalityLabel l) { return {VerdictKind::kRelabel, l, std::nullopt}; }
Verdict Revise(std::string text) { return {VerdictKind::kRevise, std::nullopt, std::move(text)}; }

ReviewStore::Clock FixedClock() {
  return [] { return std::string("2026-01-01T00:00:00Z"); };
}

std::shared_ptr<ReviewStore> Store(const std::filesystem::path& log = {},
                                   const std::filesystem::path& snap = {},
                                   ReviewConfig config = {}) {
  auto s = std::make_shared<ReviewStore>(Lexicons(), config, log, snap, FixedClock());
  for (const char* a : {"ann1", "ann2", "ann3"}) s->RegisterAnnotator(a);
  return s;
}

int Status(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ReviewError& e) {
    return e.http_status();
  }
  return 200;
}

TEST(ParseVerdictTest, WireShapes) {
  EXPECT_EQ(ParseVerdict(json{{"verdict", "accept"}}), Accept());
  EXPECT_EQ(ParseVerdict(json{{"verdict", "relabel"}, {"to_level", 1}}),
            Relabel(FormalityLabel::kCasual));
  EXPECT_EQ(ParseVerdict(json{{"verdict", "revise"}, {"edited_text", "x"}}), Revise("x"));
  EXPECT_EQ(Status([] { ParseVerdict(json{{"verdict", "maybe"}}); }), 422);
  EXPECT_EQ(Status([] { ParseVerdict(json{{"verdict", "relabel"}}); }), 422);
  EXPECT_EQ(Status([] { ParseVerdict(json{{"verdict", "relabel"}, {"to_level", 7}}); }), 422);
  EXPECT_EQ(Status([] { ParseVerdict(json{{"verdict", "revise"}, {"edited_text", "  "}}); }), 422);
  EXPECT_EQ(Status([] { ParseVerdict(json::array()); }), 422);
  EXPECT_EQ(Relabel(FormalityLabel::kFormal).Category(), "relabel:2");
}

TEST(ReviewStoreTest, EnqueueIsIdempotent) {
  auto s = Store();
  EXPECT_EQ(s->Enqueue({Triple("t1"), Triple("t2")}), 6u);
  EXPECT_EQ(s->Enqueue({Triple("t1")}), 6u);
  const ReviewItem item = s->GetItem("t1:formal");
  EXPECT_EQ(item.proposed, FormalityLabel::kFormal);
  EXPECT_EQ(item.classified, FormalityLabel::kFormal);
  EXPECT_FALSE(item.evidence.empty());
}

TEST(ReviewStoreTest, MajorityFinalizes) {
  auto s = Store();
  s->Enqueue({Triple("t1")});
  s->SubmitDecision("t1:formal", "ann1", Accept());
  s->SubmitDecision("t1:formal", "ann2", Accept());
  const ReviewItem item = s->SubmitDecision("t1:formal", "ann3", Relabel(FormalityLabel::kCasual));
  ASSERT_TRUE(item.final.has_value());
  EXPECT_EQ(item.final->kind, VerdictKind::kAccept);
  EXPECT_EQ(item.Status(), "accepted");
}

TEST(ReviewStoreTest, ThreeWaySplitEscalates) {
  auto s = Store();
  s->Enqueue({Triple("t1")});
  s->SubmitDecision("t1:anchor", "ann1", Accept());
  s->SubmitDecision("t1:anchor", "ann2", Relabel(FormalityLabel::kFormal));
  const ReviewItem item = s->SubmitDecision("t1:anchor", "ann3", Relabel(FormalityLabel::kInformal));
  EXPECT_TRUE(item.escalated);
  EXPECT_FALSE(item.final.has_value());
  EXPECT_EQ(item.Status(), "escalated");
  EXPECT_EQ(Status([&] { s->SubmitDecision("t1:anchor", "ann1", Accept()); }), 409);
  EXPECT_EQ(Status([&] { s->Resolve("t1:anchor", Revise("x"), "lead"); }), 422);
  const ReviewItem done = s->Resolve("t1:anchor", Accept(), "lead");
  EXPECT_EQ(done.Status(), "accepted");
  EXPECT_TRUE(done.manual_final);
  EXPECT_EQ(Status([&] { s->Resolve("t1:formal", Accept(), "lead"); }), 409);
}

TEST(ReviewStoreTest, StatusCodes) {
  auto s = Store();
  s->Enqueue({Triple("t1")});
  EXPECT_EQ(Status([&] { s->SubmitDecision("nope", "ann1", Accept()); }), 404);
  EXPECT_EQ(Status([&] { s->SubmitDecision("t1:formal", "stranger", Accept()); }), 404);
  s->SubmitDecision("t1:formal", "ann1", Accept());
  EXPECT_EQ(Status([&] { s->SubmitDecision("t1:formal", "ann1", Accept()); }), 409);
  EXPECT_EQ(Status([&] { s->GetItem("t9:formal"); }), 404);
  EXPECT_EQ(Status([&] { s->NextItem("stranger"); }), 404);
}

TEST(ReviewStoreTest, ReviseResetsAndReclassifies) {
  auto s = Store();
  s->Enqueue({Triple("t1")});
  s->SubmitDecision("t1:informal", "ann1", Accept());
  const ReviewItem item = s->SubmitDecision("t1:informal", "ann2", Revise("omg the plan is dead 😂"));
  EXPECT_TRUE(item.decisions.empty());
  EXPECT_EQ(item.revisions, 1);
  EXPECT_EQ(item.text, "omg the plan is dead 😂");
  bool emoji = false;
  for (const auto& e : item.evidence) emoji = emoji || e.kind == FeatureKind::kEmoji;
  EXPECT_TRUE(emoji);
  EXPECT_NO_THROW(s->SubmitDecision("t1:informal", "ann1", Accept()));
}

TEST(ReviewStoreTest, NextItemPrefersPartlyDecided) {
  auto s = Store();
  s->Enqueue({Triple("t1"), Triple("t2")});
  EXPECT_EQ(s->NextItem("ann1")->id, "t1:anchor");
  s->SubmitDecision("t2:formal", "ann1", Accept());
  s->SubmitDecision("t2:formal", "ann2", Accept());
  EXPECT_EQ(s->NextItem("ann3")->id, "t2:formal");
  EXPECT_EQ(s->NextItem("ann1")->id, "t1:anchor");
  const auto [done, total] = s->Progress("ann1");
  EXPECT_EQ(done, 1u);
  EXPECT_EQ(total, 6u);
}

TEST(ReviewStoreTest, QueueDrains) {
  auto s = Store();
  s->Enqueue({Triple("t1")});
  for (const char* a : {"ann1", "ann2", "ann3"}) {
    while (auto item = s->NextItem(a)) s->SubmitDecision(item->id, a, Accept());
  }
  EXPECT_FALSE(s->NextItem("ann1").has_value());
  EXPECT_EQ(s->ExportAccepted().size(), 3u);
}

TEST(ReviewStoreTest, AgreementMatchesKappaOracle) {
  auto s = Store();
  EXPECT_EQ(Status([&] { s->Agreement(); }), 409);
  s->Enqueue({Triple("t1"), Triple("t2")});
  // anchor items: (A,A,B) and (A,B,B) with B = relabel:0.
  const Verdict b = Relabel(FormalityLabel::kInformal);
  s->SubmitDecision("t1:anchor", "ann1", Accept());
  s->SubmitDecision("t1:anchor", "ann2", Accept());
  s->SubmitDecision("t1:anchor", "ann3", b);
  s->SubmitDecision("t2:anchor", "ann1", Accept());
  s->SubmitDecision("t2:anchor", "ann2", b);
  s->SubmitDecision("t2:anchor", "ann3", b);
  const AgreementReport r = s->Agreement();
  ASSERT_EQ(r.tasks.size(), 4u);
  EXPECT_EQ(r.tasks[0].task, "anchor");
  EXPECT_EQ(r.tasks[0].items, 2u);
  ASSERT_TRUE(r.tasks[0].kappa.has_value());
  EXPECT_NEAR(*r.tasks[0].kappa, -1.0 / 3.0, 1e-9);
  EXPECT_FALSE(r.tasks[1].kappa.has_value());
  EXPECT_FALSE(r.tasks[1].note.empty());
}

TEST(ReviewStoreTest, ExportCarriesRevisedTextsOnly) {
  auto s = Store();
  s->Enqueue({Triple("t1")});
  s->SubmitDecision("t1:formal", "ann1", Revise("It seems that the plan was abandoned."));
  for (const char* a : {"ann1", "ann2", "ann3"}) s->SubmitDecision("t1:formal", a, Accept());
  for (const char* a : {"ann1", "ann2"}) {
    s->SubmitDecision("t1:informal", a, Relabel(FormalityLabel::kCasual));
  }
  s->SubmitDecision("t1:informal", "ann3", Accept());
  const auto records = s->ExportAccepted();
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].text, "It seems that the plan was abandoned.");
  EXPECT_EQ(records[0].level, FormalityLabel::kFormal);
  EXPECT_EQ(s->GetItem("t1:informal").Status(), "relabeled");
}

// Replaying the log, with or without a snapshot, rebuilds the same state.
TEST(ReviewStoreTest, ReplayIsDeterministic) {
  TempDir dir;
  ReviewConfig config;
  config.snapshot_every = 7;
  nlohmann::ordered_json live;
  {
    auto s = Store(dir / "events.jsonl", dir / "snap.json", config);
    s->Enqueue({Triple("t1"), Triple("t2")});
    testing::Gen gen(61);
    const std::vector<std::string> annotators = {"ann1", "ann2", "ann3"};
    for (int step = 0; step < 40; ++step) {
      const std::string& a = gen.Pick(annotators);
      auto item = s->NextItem(a);
      if (!item) continue;
      const int pick = gen.Int(0, 3);
      const Verdict v = pick == 0   ? Accept()
                        : pick == 1 ? Relabel(*LabelFromInt(gen.Int(0, 2)))
                        : pick == 2 ? Accept()
                                    : Revise("edited " + std::to_string(step));
      s->SubmitDecision(item->id, a, v);
    }
    live = s->StateJson();
  }
  EXPECT_TRUE(std::filesystem::exists(dir / "snap.json"));
  auto replayed = std::make_shared<ReviewStore>(Lexicons(), config, dir / "events.jsonl",
                                                dir / "snap.json", FixedClock());
  EXPECT_EQ(replayed->StateJson(), live);
  std::filesystem::remove(dir / "snap.json");
  auto from_log = std::make_shared<ReviewStore>(Lexicons(), config, dir / "events.jsonl",
                                                std::filesystem::path{}, FixedClock());
  EXPECT_EQ(from_log->StateJson(), live);
}

TEST(ReviewStoreTest, ConcurrentSubmissions) {
  auto s = Store();
  std::vector<StyleTriple> triples;
  for (int i = 0; i < 20; ++i) triples.push_back(Triple("t" + std::to_string(i)));
  s->Enqueue(triples);
  std::vector<std::thread> threads;
  for (const char* a : {"ann1", "ann2", "ann3"}) {
    threads.emplace_back([s, a] {
      while (auto item = s->NextItem(a)) s->SubmitDecision(item->id, a, Accept());
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(s->ExportAccepted().size(), 60u);
}

TEST(ItemJsonTest, CarriesEvidenceAndBranch) {
  auto s = Store();
  s->Enqueue({Triple("t1")});
  const auto j = ItemToJson(s->GetItem("t1:informal"));
  EXPECT_EQ(j["id"], "t1:informal");
  EXPECT_EQ(j["branch"], "informal-tier");
  EXPECT_FALSE(j["evidence"].empty());
  EXPECT_EQ(j["status"], "pending");
}

}  // namespace
}  // namespace formality
