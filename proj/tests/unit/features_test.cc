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

#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "formality/classifier.h"
#include "formality/features.h"
#include "formality/unicode.h"
#include "test_support.h"

namespace formality {
namespace {

using testing::Gen;
using testing::Lexicons;

std::vector<FeatureEvidence> All(const std::string& text) {
  return DetectAllMarkers(Analyze(text, *Lexicons()), *Lexicons());
}

bool Has(const std::vector<FeatureEvidence>& ev, FeatureKind kind, const std::string& matched) {
  return std::any_of(ev.begin(), ev.end(), [&](const FeatureEvidence& e) {
    return e.kind == kind && e.matched == matched;
  });
}

bool HasKind(const std::vector<FeatureEvidence>& ev, FeatureKind kind) {
  return std::any_of(ev.begin(), ev.end(), [&](const FeatureEvidence& e) { return e.kind == kind; });
}

TEST(InformalDetectors, SlangNetspeakInterjection) {
  const auto ev = All("Wow dude, idk");
  EXPECT_TRUE(Has(ev, FeatureKind::kInterjection, "Wow"));
  EXPECT_TRUE(Has(ev, FeatureKind::kSlang, "dude"));
  EXPECT_TRUE(Has(ev, FeatureKind::kNetspeak, "idk"));
}

TEST(InformalDetectors, EmojiAndEmoticon) {
  const auto ev = All("great 😂 see you :) <3");
  EXPECT_TRUE(Has(ev, FeatureKind::kEmoji, "😂"));
  EXPECT_TRUE(Has(ev, FeatureKind::kEmoji, ":)"));
  EXPECT_TRUE(Has(ev, FeatureKind::kEmoji, "<3"));
}

TEST(InformalDetectors, EmoticonWithTrailingPunctuation) {
  EXPECT_TRUE(Has(All("see you :D."), FeatureKind::kEmoji, ":D"));
}

TEST(InformalDetectors, TimesAndRatiosAreNotEmoticons) {
  EXPECT_FALSE(HasKind(All("The meeting is at 10:30."), FeatureKind::kEmoji));
}

TEST(InformalDetectors, ElongatedSpelling) {
  EXPECT_TRUE(Has(All("that was sooo good"), FeatureKind::kNonstandardSpelling, "sooo"));
  EXPECT_FALSE(HasKind(All("a good book"), FeatureKind::kNonstandardSpelling));
}

TEST(InformalDetectors, GrammaticalErrors) {
  EXPECT_TRUE(Has(All("im happy"), FeatureKind::kGrammaticalError, "im"));
  EXPECT_TRUE(Has(All("then i left"), FeatureKind::kGrammaticalError, "i"));
  EXPECT_TRUE(Has(All("I saw the the cat"), FeatureKind::kGrammaticalError, "the the"));
  EXPECT_FALSE(HasKind(All("I said that that was fine"), FeatureKind::kGrammaticalError));
  EXPECT_FALSE(HasKind(All("Then I left"), FeatureKind::kGrammaticalError));
}

TEST(CasualDetectors, ContractionAbbreviationAddress) {
  const auto ev = All("Hey, you can't send the info now");
  EXPECT_TRUE(Has(ev, FeatureKind::kContraction, "can't"));
  EXPECT_TRUE(Has(ev, FeatureKind::kAbbreviation, "info"));
  EXPECT_TRUE(Has(ev, FeatureKind::kDirectAddress, "you"));
  EXPECT_TRUE(Has(ev, FeatureKind::kDirectAddress, "Hey"));
}

TEST(CasualDetectors, EstablishedAcronymIsNotCasual) {
  EXPECT_FALSE(HasKind(All("The TV was on"), FeatureKind::kAbbreviation));
}

TEST(CasualDetectors, VocativeOnlyAtOpener) {
  EXPECT_FALSE(HasKind(All("They said hi to the board"), FeatureKind::kDirectAddress));
}

TEST(FormalDetectors, HedgeLongestMatch) {
  const auto ev = All("It would appear that the results hold");
  EXPECT_TRUE(Has(ev, FeatureKind::kHedging, "it would appear that"));
  EXPECT_EQ(std::count_if(ev.begin(), ev.end(),
                          [](const auto& e) { return e.kind == FeatureKind::kHedging; }),
            1);
}

TEST(FormalDetectors, NominalizationAndPassive) {
  const auto ev = All("The proposal was rejected after the evaluation.");
  EXPECT_TRUE(Has(ev, FeatureKind::kPassiveVoice, "was rejected"));
  EXPECT_TRUE(Has(ev, FeatureKind::kNominalization, "evaluation"));
}

TEST(FormalDetectors, PassiveWithInterveningAdverb) {
  EXPECT_TRUE(Has(All("It was quickly written."), FeatureKind::kPassiveVoice, "was quickly written"));
  EXPECT_FALSE(HasKind(All("It was a red car."), FeatureKind::kPassiveVoice));
}

TEST(FeatureTables, TierAssignment) {
  EXPECT_EQ(TierOf(FeatureKind::kEmoji), Tier::kInformal);
  EXPECT_EQ(TierOf(FeatureKind::kAbbreviation), Tier::kCasual);
  EXPECT_EQ(TierOf(FeatureKind::kPassiveVoice), Tier::kFormal);
  EXPECT_TRUE(IsContraction("won't"));
  EXPECT_TRUE(IsConfusionForm("dont"));
  EXPECT_TRUE(IsIrregularParticiple("written"));
  EXPECT_TRUE(IsEstablishedAbbreviation("usa"));
}

// Every span lies within the text and its code points spell `matched`.
TEST(DetectorProperty, SpansMatchSurface) {
  Gen gen(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string text = testing::InjectMarkers(gen).text;
    const auto cps = unicode::Decode(text);
    for (const FeatureEvidence& e : All(text)) {
      ASSERT_LT(e.span.start, e.span.end) << text;
      ASSERT_LE(e.span.end, cps.size()) << text;
      const std::size_t b = cps[e.span.start].byte_offset;
      const std::size_t last = e.span.end - 1;
      const std::size_t end = cps[last].byte_offset + cps[last].byte_length;
      ASSERT_EQ(text.substr(b, end - b), e.matched) << text;
    }
  }
}

// Case changes do not change detection, except where case is itself the
// marker (a lowercase standalone "i").
TEST(DetectorProperty, CaseInsensitive) {
  Gen gen(22);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string text = testing::InjectMarkers(gen).text;
    const std::string upper = unicode::ToUpperAscii(text);
    std::vector<FeatureKind> a;
    std::vector<FeatureKind> b;
    for (const auto& e : All(text)) a.push_back(e.kind);
    for (const auto& e : All(upper)) b.push_back(e.kind);
    ASSERT_EQ(a, b) << text;
  }
}

std::vector<FeatureEvidence> DetectTier(const std::string& text, Tier tier) {
  const auto tagged = Analyze(text, *Lexicons());
  switch (tier) {
    case Tier::kInformal:
      return DetectInformalMarkers(tagged, *Lexicons());
    case Tier::kCasual:
      return DetectCasualMarkers(tagged, *Lexicons());
    case Tier::kFormal:
      return DetectFormalMarkers(tagged, *Lexicons());
  }
  return {};
}

const std::vector<std::string>& PoolFor(Tier tier) {
  switch (tier) {
    case Tier::kInformal:
      return testing::InformalMarkers();
    case Tier::kCasual:
      return testing::CasualMarkers();
    case Tier::kFormal:
      break;
  }
  return testing::FormalMarkers();
}

// Appending another tier's marker leaves a tier's evidence untouched.
TEST(DetectorProperty, TiersAreIndependent) {
  Gen gen(23);
  const Tier tiers[] = {Tier::kInformal, Tier::kCasual, Tier::kFormal};
  for (int trial = 0; trial < 600; ++trial) {
    const Tier own = tiers[trial % 3];
    const Tier other = tiers[(trial + 1 + gen.Int(0, 1)) % 3];
    std::string text = gen.Pick(testing::NeutralClauses());
    text.insert(0, gen.Pick(PoolFor(own)) + " ");
    const auto before = DetectTier(text, own);
    const auto after = DetectTier(text + " " + gen.Pick(PoolFor(other)), own);
    ASSERT_EQ(before, after) << text;
  }
}

TEST(DetectorProperty, AppendedEmojiAddsOneEvidence) {
  Gen gen(24);
  const std::vector<std::string> emoji = {"😂", "👍🏽", "🎉", "🇫🇷", "❤️"};
  for (int trial = 0; trial < 500; ++trial) {
    const std::string text = testing::InjectMarkers(gen).text;
    const std::string e = gen.Pick(emoji);
    auto before = All(text);
    auto after = All(text + " " + e);
    const std::size_t at = unicode::ScalarCount(text) + 1;
    const FeatureEvidence added{FeatureKind::kEmoji, {at, at + unicode::ScalarCount(e)}, e};
    auto it = std::find(after.begin(), after.end(), added);
    ASSERT_NE(it, after.end()) << text;
    after.erase(it);
    ASSERT_EQ(before, after) << text;
  }
}

}  // namespace
}  // namespace formality
