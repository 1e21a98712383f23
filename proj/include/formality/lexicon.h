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

#ifndef FORMALITY_LEXICON_H_
#define FORMALITY_LEXICON_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace formality {

// Coarse word classes used by the tagger and the formality score.
enum class Pos {
  kNoun,
  kVerb,
  kAdjective,
  kAdverb,
  kPronoun,
  kPreposition,
  kArticle,
  kInterjection,
  kConjunction,
  kNumeral,
  kPunctuation,
  kEmoji,
  kOther,
};

std::string_view PosName(Pos pos);
std::optional<Pos> ParsePos(std::string_view name);

enum class LexiconId {
  kSlang,
  kNetspeak,
  kInterjections,
  kAbbreviations,
  kHedges,
  kDirectAddress,
  kPosLexicon,
  kDictionary,
};

inline constexpr std::array<LexiconId, 8> kAllLexiconIds = {
    LexiconId::kSlang,         LexiconId::kNetspeak,
    LexiconId::kInterjections, LexiconId::kAbbreviations,
    LexiconId::kHedges,        LexiconId::kDirectAddress,
    LexiconId::kPosLexicon,    LexiconId::kDictionary,
};

// File stem of a lexicon ("slang", "pos_lexicon", ...).
std::string_view LexiconName(LexiconId id);

struct EmoticonPattern {
  std::string source;
  std::regex regex;
};

// The ASCII emoticon patterns used when a lexicon directory carries no
// emoticons.txt.
std::vector<std::string> DefaultEmoticonPatterns();

// Read-only after construction. Entries are stored lowercase.
class LexiconSet {
 public:
  LexiconSet();

  // Loads <dir>/<name>.txt for every lexicon id. emoticons.txt is optional.
  static LexiconSet Load(const std::filesystem::path& directory);

  // Adds a lexicon; throws LexiconError if the id is already present.
  // Entries are normalized (lowercased, whitespace-collapsed, deduplicated).
  void Add(LexiconId id, const std::vector<std::string>& entries);

  // pos_lexicon entries: "surface<TAB>pos[,pos...]".
  void AddPosLexicon(const std::vector<std::string>& lines);

  void SetEmoticonPatterns(const std::vector<std::string>& patterns);

  bool Has(LexiconId id) const;
  std::size_t size() const;

  // key must already be normalized (unicode::NormalizeKey).
  bool Contains(LexiconId id, std::string_view key) const;
  const std::set<std::string, std::less<>>& Entries(LexiconId id) const;

  // Ranked classes for a normalized surface; empty if absent.
  const std::vector<Pos>* PosOf(std::string_view key) const;

  const std::vector<EmoticonPattern>& emoticons() const { return emoticons_; }

 private:
  std::map<LexiconId, std::set<std::string, std::less<>>> sets_;
  std::map<std::string, std::vector<Pos>, std::less<>> pos_;
  std::vector<EmoticonPattern> emoticons_;
};

// Process-wide default directory: $FORMALITY_LEXICONS if set, else the
// resources directory of the source tree.
std::filesystem::path DefaultLexiconDirectory();

}  // namespace formality

#endif  // FORMALITY_LEXICON_H_
