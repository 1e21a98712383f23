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

#include "formality/features.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "formality/unicode.h"

namespace formality {
namespace {

using StringSet = std::set<std::string_view>;

// Contraction -> expansion. Possessive 's on nouns is deliberately absent.
const std::map<std::string_view, std::string_view>& ContractionTable() {
  static const std::map<std::string_view, std::string_view> kTable = {
      {"aren't", "are not"},     {"can't", "cannot"},
      {"couldn't", "could not"}, {"didn't", "did not"},
      {"doesn't", "does not"},   {"don't", "do not"},
      {"hadn't", "had not"},     {"hasn't", "has not"},
      {"haven't", "have not"},   {"he'd", "he would"},
      {"he'll", "he will"},      {"he's", "he is"},
      {"here's", "here is"},     {"how's", "how is"},
      {"i'd", "i would"},        {"i'll", "i will"},
      {"i'm", "i am"},           {"i've", "i have"},
      {"isn't", "is not"},       {"it'd", "it would"},
      {"it'll", "it will"},      {"it's", "it is"},
      {"let's", "let us"},       {"mightn't", "might not"},
      {"mustn't", "must not"},   {"needn't", "need not"},
      {"shan't", "shall not"},   {"she'd", "she would"},
      {"she'll", "she will"},    {"she's", "she is"},
      {"shouldn't", "should not"}, {"that'll", "that will"},
      {"that's", "that is"},     {"there'll", "there will"},
      {"there's", "there is"},   {"they'd", "they would"},
      {"they'll", "they will"},  {"they're", "they are"},
      {"they've", "they have"},  {"wasn't", "was not"},
      {"we'd", "we would"},      {"we'll", "we will"},
      {"we're", "we are"},       {"we've", "we have"},
      {"weren't", "were not"},   {"what'll", "what will"},
      {"what's", "what is"},     {"when's", "when is"},
      {"where's", "where is"},   {"who'd", "who would"},
      {"who'll", "who will"},    {"who's", "who is"},
      {"won't", "will not"},     {"wouldn't", "would not"},
      {"you'd", "you would"},    {"you'll", "you will"},
      {"you're", "you are"},     {"you've", "you have"},
  };
  return kTable;
}

const StringSet kConfusionForms = {
    "arent", "cant",   "couldnt", "didnt",  "doesnt", "dont",
    "hadnt", "hasnt",  "havent",  "im",     "isnt",   "ive",
    "shouldnt", "thats", "theyre", "wasnt", "werent", "whats",
    "wouldnt", "youre",
};

const StringSet kLowercaseIForms = {"i", "i'm", "i'd", "i'll", "i've"};

// Grammatical repetitions ("had had", "that that").
const StringSet kAllowedRepeats = {"had", "that"};

const StringSet kIrregularParticiples = {
    "been",    "begun",   "bent",    "bitten",  "blown",   "born",
    "borne",   "bought",  "broken",  "brought", "built",   "caught",
    "chosen",  "come",    "cost",    "cut",     "dealt",   "done",
    "drawn",   "driven",  "drunk",   "eaten",   "fallen",  "fed",
    "felt",    "forgiven", "forgotten", "found", "frozen",  "given",
    "gone",    "grown",   "heard",   "held",    "hidden",  "hit",
    "hung",    "hurt",    "kept",    "known",   "laid",    "led",
    "left",    "lent",    "lost",    "made",    "meant",   "met",
    "overcome", "paid",   "put",     "quit",    "read",    "ridden",
    "risen",   "run",     "said",    "seen",    "sent",    "set",
    "shaken",  "shown",   "shut",    "sold",    "sought",  "spent",
    "spoken",  "spread",  "stolen",  "stood",   "struck",  "sung",
    "sworn",   "taken",   "taught",  "thought", "thrown",  "told",
    "torn",    "understood", "undertaken", "withdrawn", "won", "worn",
    "written",
};

const StringSet kBeForms = {"am", "are", "be", "been", "being", "is", "was", "were"};

const StringSet kSecondPerson = {"you", "your", "yours", "yourself", "yourselves"};

// Acronyms that read as ordinary vocabulary in any register.
const StringSet kEstablishedAbbreviations = {
    "a.m.", "ceo", "cia", "dna", "dvd", "eu",  "fbi", "inc", "ltd", "mr",
    "mrs",  "ms",  "nasa", "p.m.", "pc", "tv",  "u.k.", "u.s.", "u.s.a.",
    "uk",   "un",  "usa",
};

constexpr std::array<std::string_view, 7> kNominalSuffixes = {
    "tion", "sion", "ment", "ness", "ity", "ance", "ence"};

bool IsAlphabetic(std::string_view surface) {
  const auto cps = unicode::Decode(surface);
  return !cps.empty() && std::all_of(cps.begin(), cps.end(), [](const auto& cp) {
    return unicode::IsLetter(cp.value);
  });
}

bool HasApostrophe(std::string_view key) {
  return key.find('\'') != std::string_view::npos;
}

// Three or more identical letters in a row ("sooo").
bool IsElongated(std::string_view key) {
  int run = 1;
  for (std::size_t i = 1; i < key.size(); ++i) {
    const char c = key[i];
    const bool letter = c >= 'a' && c <= 'z';
    run = (letter && c == key[i - 1]) ? run + 1 : 1;
    if (run >= 3) return true;
  }
  return false;
}

std::string Slice(const TaggedSentence& s, const Token& first, const Token& last) {
  return s.text.substr(first.byte_start, last.byte_end - first.byte_start);
}

FeatureEvidence Evidence(FeatureKind kind, const Token& token) {
  return {kind, {token.start, token.end}, token.surface};
}

void SortByStart(std::vector<FeatureEvidence>& evidence) {
  std::stable_sort(evidence.begin(), evidence.end(),
                   [](const FeatureEvidence& a, const FeatureEvidence& b) {
                     return a.span.start < b.span.start;
                   });
}

// Whitespace-delimited chunks matched against the emoticon patterns. A
// chunk that fails is retried without trailing sentence punctuation.
void DetectEmoticons(const TaggedSentence& sentence, const LexiconSet& lexicons,
                     std::vector<FeatureEvidence>& out) {
  const auto cps = unicode::Decode(sentence.text);
  auto matches = [&](const std::string& chunk) {
    return std::any_of(lexicons.emoticons().begin(), lexicons.emoticons().end(),
                       [&](const EmoticonPattern& p) {
                         return std::regex_match(chunk, p.regex);
                       });
  };
  std::size_t i = 0;
  while (i < cps.size()) {
    if (unicode::IsWhitespace(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !unicode::IsWhitespace(cps[j].value)) ++j;
    for (std::size_t end = j; end > i; --end) {
      const std::size_t b0 = cps[i].byte_offset;
      const std::size_t b1 = cps[end - 1].byte_offset + cps[end - 1].byte_length;
      std::string chunk = sentence.text.substr(b0, b1 - b0);
      if (matches(chunk)) {
        out.push_back({FeatureKind::kEmoji, {i, end}, std::move(chunk)});
        break;
      }
      const char32_t last = cps[end - 1].value;
      if (last != U'.' && last != U',' && last != U'!' && last != U'?') break;
    }
    i = j;
  }
}

// A vocative counts only as the first word of a sentence.
std::vector<bool> OpenerPositions(const TaggedSentence& sentence) {
  std::vector<bool> opener(sentence.tokens.size(), false);
  bool at_start = true;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& t = sentence.tokens[i];
    if (t.kind == TokenKind::kWord) {
      opener[i] = at_start;
      at_start = false;
    } else if (t.surface == "." || t.surface == "!" || t.surface == "?") {
      at_start = true;
    }
  }
  return opener;
}

}  // namespace

Tier TierOf(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kSlang:
    case FeatureKind::kNetspeak:
    case FeatureKind::kInterjection:
    case FeatureKind::kEmoji:
    case FeatureKind::kNonstandardSpelling:
    case FeatureKind::kGrammaticalError:
      return Tier::kInformal;
    case FeatureKind::kContraction:
    case FeatureKind::kAbbreviation:
    case FeatureKind::kDirectAddress:
      return Tier::kCasual;
    case FeatureKind::kHedging:
    case FeatureKind::kNominalization:
    case FeatureKind::kPassiveVoice:
      return Tier::kFormal;
  }
  return Tier::kCasual;
}

std::string_view FeatureName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kSlang:
      return "slang";
    case FeatureKind::kNetspeak:
      return "netspeak";
    case FeatureKind::kInterjection:
      return "interjection";
    case FeatureKind::kEmoji:
      return "emoji";
    case FeatureKind::kNonstandardSpelling:
      return "nonstandard_spelling";
    case FeatureKind::kGrammaticalError:
      return "grammatical_error";
    case FeatureKind::kContraction:
      return "contraction";
    case FeatureKind::kAbbreviation:
      return "abbreviation";
    case FeatureKind::kDirectAddress:
      return "direct_address";
    case FeatureKind::kHedging:
      return "hedging";
    case FeatureKind::kNominalization:
      return "nominalization";
    case FeatureKind::kPassiveVoice:
      return "passive_voice";
  }
  return "unknown";
}

std::string_view TierName(Tier tier) {
  switch (tier) {
    case Tier::kInformal:
      return "informal";
    case Tier::kCasual:
      return "casual";
    case Tier::kFormal:
      return "formal";
  }
  return "unknown";
}

bool IsContraction(std::string_view key) { return ContractionTable().contains(key); }
bool IsConfusionForm(std::string_view key) { return kConfusionForms.contains(key); }
bool IsIrregularParticiple(std::string_view key) {
  return kIrregularParticiples.contains(key);
}
bool IsEstablishedAbbreviation(std::string_view key) {
  return kEstablishedAbbreviations.contains(key);
}

std::vector<FeatureEvidence> DetectInformalMarkers(const TaggedSentence& sentence,
                                                   const LexiconSet& lexicons) {
  std::vector<FeatureEvidence> out;
  const auto& tokens = sentence.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (tok.kind == TokenKind::kEmoji) {
      out.push_back(Evidence(FeatureKind::kEmoji, tok));
      continue;
    }
    if (tok.kind != TokenKind::kWord) continue;
    const std::string key = unicode::NormalizeKey(tok.surface);

    if (lexicons.Contains(LexiconId::kSlang, key)) {
      out.push_back(Evidence(FeatureKind::kSlang, tok));
    } else if (lexicons.Contains(LexiconId::kNetspeak, key)) {
      out.push_back(Evidence(FeatureKind::kNetspeak, tok));
    } else if (lexicons.Contains(LexiconId::kInterjections, key) ||
               (tok.pos == Pos::kInterjection &&
                !lexicons.Contains(LexiconId::kDirectAddress, key))) {
      out.push_back(Evidence(FeatureKind::kInterjection, tok));
    }

    if (IsAlphabetic(tok.surface) && !lexicons.Contains(LexiconId::kDictionary, key) &&
        (IsElongated(key) || lexicons.Contains(LexiconId::kNetspeak, key))) {
      out.push_back(Evidence(FeatureKind::kNonstandardSpelling, tok));
    }

    const bool lowercase_i = tok.surface.starts_with("i") && kLowercaseIForms.contains(key);
    if (lowercase_i || IsConfusionForm(key)) {
      out.push_back(Evidence(FeatureKind::kGrammaticalError, tok));
    }

    if (i + 1 < tokens.size()) {
      const Token& next = tokens[i + 1];
      if (next.kind == TokenKind::kWord && IsAlphabetic(tok.surface) &&
          unicode::NormalizeKey(next.surface) == key && !kAllowedRepeats.contains(key)) {
        out.push_back({FeatureKind::kGrammaticalError,
                       {tok.start, next.end},
                       Slice(sentence, tok, next)});
      }
    }
  }
  DetectEmoticons(sentence, lexicons, out);
  SortByStart(out);
  return out;
}

std::vector<FeatureEvidence> DetectCasualMarkers(const TaggedSentence& sentence,
                                                 const LexiconSet& lexicons) {
  std::vector<FeatureEvidence> out;
  const std::vector<bool> opener = OpenerPositions(sentence);
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& tok = sentence.tokens[i];
    if (tok.kind != TokenKind::kWord) continue;
    const std::string key = unicode::NormalizeKey(tok.surface);

    if (HasApostrophe(key) && IsContraction(key)) {
      out.push_back(Evidence(FeatureKind::kContraction, tok));
    }
    if (lexicons.Contains(LexiconId::kAbbreviations, key) &&
        !IsEstablishedAbbreviation(key)) {
      out.push_back(Evidence(FeatureKind::kAbbreviation, tok));
    }
    const std::string stem = key.substr(0, key.find('\''));
    if (kSecondPerson.contains(stem) ||
        (opener[i] && lexicons.Contains(LexiconId::kDirectAddress, key))) {
      out.push_back(Evidence(FeatureKind::kDirectAddress, tok));
    }
  }
  return out;
}

std::vector<FeatureEvidence> DetectFormalMarkers(const TaggedSentence& sentence,
                                                 const LexiconSet& lexicons) {
  std::vector<FeatureEvidence> out;
  const auto& tokens = sentence.tokens;

  std::vector<std::string> keys;
  keys.reserve(tokens.size());
  for (const Token& t : tokens) keys.push_back(unicode::NormalizeKey(t.surface));

  // Hedge phrases split into words, longest first.
  std::vector<std::pair<std::string, std::vector<std::string>>> hedges;
  for (const std::string& entry : lexicons.Entries(LexiconId::kHedges)) {
    std::vector<std::string> words;
    std::size_t pos = 0;
    while (pos <= entry.size()) {
      const std::size_t sp = entry.find(' ', pos);
      words.push_back(entry.substr(pos, sp == std::string::npos ? sp : sp - pos));
      if (sp == std::string::npos) break;
      pos = sp + 1;
    }
    hedges.emplace_back(entry, std::move(words));
  }
  std::stable_sort(hedges.begin(), hedges.end(), [](const auto& a, const auto& b) {
    return a.second.size() > b.second.size();
  });

  for (std::size_t i = 0; i < tokens.size();) {
    std::size_t matched_len = 0;
    for (const auto& [entry, words] : hedges) {
      if (i + words.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < words.size() && ok; ++k) {
        ok = tokens[i + k].kind == TokenKind::kWord && keys[i + k] == words[k];
      }
      if (ok) {
        const Token& last = tokens[i + words.size() - 1];
        out.push_back({FeatureKind::kHedging, {tokens[i].start, last.end}, entry});
        matched_len = words.size();
        break;
      }
    }
    i += matched_len > 0 ? matched_len : 1;
  }

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (tok.kind != TokenKind::kWord) continue;
    const std::string& key = keys[i];
    if (tok.pos == Pos::kNoun && tok.end - tok.start >= 6 &&
        std::any_of(kNominalSuffixes.begin(), kNominalSuffixes.end(),
                    [&](std::string_view s) { return key.ends_with(s); })) {
      out.push_back(Evidence(FeatureKind::kNominalization, tok));
    }
    if (kBeForms.contains(key)) {
      for (std::size_t k = i + 1; k < tokens.size() && k <= i + 2; ++k) {
        const Token& cand = tokens[k];
        if (cand.kind != TokenKind::kWord) break;
        const std::string& ck = keys[k];
        const bool participle =
            IsIrregularParticiple(ck) ||
            (cand.pos == Pos::kVerb && (ck.ends_with("ed") || ck.ends_with("en")));
        if (participle) {
          out.push_back({FeatureKind::kPassiveVoice,
                         {tok.start, cand.end},
                         Slice(sentence, tok, cand)});
          break;
        }
      }
    }
  }
  SortByStart(out);
  return out;
}

std::vector<FeatureEvidence> DetectAllMarkers(const TaggedSentence& sentence,
                                              const LexiconSet& lexicons) {
  std::vector<FeatureEvidence> all = DetectInformalMarkers(sentence, lexicons);
  for (auto&& e : DetectCasualMarkers(sentence, lexicons)) all.push_back(std::move(e));
  for (auto&& e : DetectFormalMarkers(sentence, lexicons)) all.push_back(std::move(e));
  return all;
}

}  // namespace formality
