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

// Minimal UTF-8 handling for the tokenizer. Character classes are fixed
// tables rather than locale or ICU lookups so results never depend on the
// host environment.

#ifndef FORMALITY_UNICODE_H_
#define FORMALITY_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace formality::unicode {

struct CodePoint {
  char32_t value;
  std::size_t byte_offset;
  std::size_t byte_length;
};

// Malformed sequences decode to U+FFFD covering a single byte, so every
// input byte belongs to exactly one code point.
std::vector<CodePoint> Decode(std::string_view utf8);

std::size_t ScalarCount(std::string_view utf8);

void AppendUtf8(char32_t cp, std::string* out);

bool IsWhitespace(char32_t cp);

// Pictographic emoji, dingbats and regional indicators.
bool IsEmoji(char32_t cp);

// Code points that extend a preceding emoji: variation selectors, skin
// tone modifiers, zero-width joiner, combining keycap.
bool IsEmojiExtender(char32_t cp);

bool IsRegionalIndicator(char32_t cp);

bool IsApostrophe(char32_t cp);

// ASCII punctuation/symbols and the common Unicode punctuation blocks.
bool IsPunctuation(char32_t cp);

// Anything that is not whitespace, punctuation or emoji.
bool IsWordChar(char32_t cp);

bool IsLetter(char32_t cp);

// ASCII-only lowercase; curly apostrophes become '\''.
std::string NormalizeKey(std::string_view text);

std::string ToUpperAscii(std::string_view text);

}  // namespace formality::unicode

#endif  // FORMALITY_UNICODE_H_
