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

#include "formality/text.h"

#include <algorithm>
#include <utility>

#include "formality/error.h"
#include "formality/unicode.h"

namespace formality {
namespace {

using unicode::CodePoint;

struct SuffixRule {
  std::string_view suffix;
  Pos pos;
};

// Checked in order; the first rule whose suffix matches wins.
constexpr SuffixRule kSuffixRules[] = {
    {"tion", Pos::kNoun},      {"sion", Pos::kNoun},
    {"ment", Pos::kNoun},      {"ness", Pos::kNoun},
    {"ity", Pos::kNoun},       {"ance", Pos::kNoun},
    {"ence", Pos::kNoun},      {"ism", Pos::kNoun},
    {"ship", Pos::kNoun},      {"hood", Pos::kNoun},
    {"ly", Pos::kAdverb},      {"ing", Pos::kVerb},
    {"ed", Pos::kVerb},        {"ize", Pos::kVerb},
    {"ise", Pos::kVerb},       {"ify", Pos::kVerb},
    {"ous", Pos::kAdjective},  {"ful", Pos::kAdjective},
    {"less", Pos::kAdjective}, {"able", Pos::kAdjective},
    {"ible", Pos::kAdjective}, {"ive", Pos::kAdjective},
    {"ic", Pos::kAdjective},   {"al", Pos::kAdjective},
};

Token MakeToken(std::string_view text, const std::vector<CodePoint>& cps,
                std::size_t begin, std::size_t end, TokenKind kind) {
  Token t;
  t.start = begin;
  t.end = end;
  t.byte_start = cps[begin].byte_offset;
  t.byte_end = cps[end - 1].byte_offset + cps[end - 1].byte_length;
  t.surface = std::string(text.substr(t.byte_start, t.byte_end - t.byte_start));
  t.kind = kind;
  return t;
}

bool IsNumeric(std::string_view key) {
  if (key.empty() || key.front() < '0' || key.front() > '9') return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == ',' || c == ':';
  });
}

}  // namespace

bool TaggedSentence::tagged() const {
  return std::all_of(tokens.begin(), tokens.end(),
                     [](const Token& t) { return t.pos.has_value(); });
}

TaggedSentence Tokenize(std::string_view text) {
  TaggedSentence out;
  out.text = std::string(text);
  const std::vector<CodePoint> cps = unicode::Decode(text);
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = cps[i].value;
    if (unicode::IsWhitespace(c)) {
      ++i;
      continue;
    }
    if (unicode::IsEmoji(c)) {
      std::size_t j = i + 1;
      if (unicode::IsRegionalIndicator(c)) {
        if (j < n && unicode::IsRegionalIndicator(cps[j].value)) ++j;
      } else {
        while (j < n && unicode::IsEmojiExtender(cps[j].value)) {
          const bool zwj = cps[j].value == 0x200D;
          ++j;
          if (zwj && j < n && unicode::IsEmoji(cps[j].value)) ++j;
        }
      }
      out.tokens.push_back(MakeToken(text, cps, i, j, TokenKind::kEmoji));
      i = j;
      continue;
    }
    if (unicode::IsWordChar(c)) {
      std::size_t j = i + 1;
      bool internal_period = false;
      while (j < n) {
        const char32_t d = cps[j].value;
        if (unicode::IsWordChar(d)) {
          ++j;
        } else if ((unicode::IsApostrophe(d) || d == U'.') && j + 1 < n &&
                   unicode::IsWordChar(cps[j + 1].value)) {
          internal_period = internal_period || d == U'.';
          j += 2;
        } else if (d == U'.' && internal_period) {
          ++j;
          break;
        } else {
          break;
        }
      }
      out.tokens.push_back(MakeToken(text, cps, i, j, TokenKind::kWord));
      i = j;
      continue;
    }
    out.tokens.push_back(MakeToken(text, cps, i, i + 1, TokenKind::kPunctuation));
    ++i;
  }
  return out;
}

std::optional<Pos> SuffixClass(std::string_view key) {
  if (IsNumeric(key)) return Pos::kNumeral;
  for (const SuffixRule& rule : kSuffixRules) {
    if (key.size() >= rule.suffix.size() + 2 && key.ends_with(rule.suffix)) {
      return rule.pos;
    }
  }
  return std::nullopt;
}

TaggedSentence PosTag(TaggedSentence sentence, const LexiconSet& lexicons) {
  if (!lexicons.Has(LexiconId::kPosLexicon)) {
    throw LexiconError("lexicon 'pos_lexicon' not loaded");
  }
  for (Token& token : sentence.tokens) {
    if (token.kind == TokenKind::kPunctuation) {
      token.pos = Pos::kPunctuation;
      continue;
    }
    if (token.kind == TokenKind::kEmoji) {
      token.pos = Pos::kEmoji;
      continue;
    }
    const std::string key = unicode::NormalizeKey(token.surface);
    if (const auto* classes = lexicons.PosOf(key)) {
      token.pos = classes->front();
      continue;
    }
    if (const auto apos = key.find('\''); apos != std::string::npos && apos > 0) {
      if (const auto* classes = lexicons.PosOf(key.substr(0, apos))) {
        token.pos = classes->front();
        continue;
      }
    }
    token.pos = SuffixClass(key).value_or(Pos::kOther);
  }
  return sentence;
}

TaggedSentence Analyze(std::string_view text, const LexiconSet& lexicons) {
  return PosTag(Tokenize(text), lexicons);
}

std::string Reconstruct(const TaggedSentence& sentence) {
  std::string out;
  std::size_t cursor = 0;
  for (const Token& t : sentence.tokens) {
    out.append(sentence.text, cursor, t.byte_start - cursor);
    out.append(t.surface);
    cursor = t.byte_end;
  }
  out.append(sentence.text, cursor, std::string::npos);
  return out;
}

}  // namespace formality
