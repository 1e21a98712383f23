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

// Deterministic tokenizer and lexicon/suffix POS tagger.
//
// Tokenization rules:
//   - whitespace separates tokens and is never part of one;
//   - runs of word characters form a token; an apostrophe or period between
//     two word characters stays inside the token ("can't", "u.s"), and a
//     trailing period stays attached when the token already contains an
//     internal period ("u.s.", "e.g.");
//   - every other punctuation character is its own token;
//   - an emoji code point is its own token, together with any variation
//     selectors, skin-tone modifiers and ZWJ-joined emoji that follow it.
//     Two regional indicators form one flag token.

#ifndef FORMALITY_TEXT_H_
#define FORMALITY_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formality/lexicon.h"

namespace formality {

enum class TokenKind { kWord, kPunctuation, kEmoji };

struct Token {
  std::string surface;
  // Code point offsets into the source text, end exclusive.
  std::size_t start = 0;
  std::size_t end = 0;
  // Byte offsets of the same span.
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
  TokenKind kind = TokenKind::kWord;
  std::optional<Pos> pos;

  bool operator==(const Token&) const = default;
};

struct TaggedSentence {
  std::string text;
  std::vector<Token> tokens;

  bool tagged() const;
  bool operator==(const TaggedSentence&) const = default;
};

TaggedSentence Tokenize(std::string_view text);

// Assigns exactly one class per token. Lookup order: character class
// (punctuation, emoji), pos_lexicon (full surface, then the part before an
// apostrophe), suffix heuristics, then kOther. Throws LexiconError when the
// set has no pos_lexicon.
TaggedSentence PosTag(TaggedSentence sentence, const LexiconSet& lexicons);

// The suffix stage alone, for a normalized word.
std::optional<Pos> SuffixClass(std::string_view key);

// Tokenize + PosTag.
TaggedSentence Analyze(std::string_view text, const LexiconSet& lexicons);

// Rebuilds the source from tokens and the gaps between them.
std::string Reconstruct(const TaggedSentence& sentence);

}  // namespace formality

#endif  // FORMALITY_TEXT_H_
