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

#include "formality/lexicon.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "formality/error.h"
#include "formality/unicode.h"

namespace formality {
namespace {

constexpr std::array<std::string_view, 13> kPosNames = {
    "noun",         "verb",        "adjective",   "adverb",  "pronoun",
    "preposition",  "article",     "interjection", "conjunction", "numeral",
    "punctuation",  "emoji",       "other",
};

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

// Lowercases and collapses runs of spaces so multi-word hedges compare
// token-aligned.
std::string NormalizeEntry(std::string_view raw) {
  std::string key = unicode::NormalizeKey(Trim(raw));
  std::string out;
  bool space = false;
  for (char c : key) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError(fmt::format("cannot read '{}'", path.string()));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string_view PosName(Pos pos) { return kPosNames[static_cast<int>(pos)]; }

std::optional<Pos> ParsePos(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

std::string_view LexiconName(LexiconId id) {
  switch (id) {
    case LexiconId::kSlang:
      return "slang";
    case LexiconId::kNetspeak:
      return "netspeak";
    case LexiconId::kInterjections:
      return "interjections";
    case LexiconId::kAbbreviations:
      return "abbreviations";
    case LexiconId::kHedges:
      return "hedges";
    case LexiconId::kDirectAddress:
      return "direct_address";
    case LexiconId::kPosLexicon:
      return "pos_lexicon";
    case LexiconId::kDictionary:
      return "dictionary";
  }
  return "unknown";
}

std::vector<std::string> DefaultEmoticonPatterns() {
  return {
      R"([:;=][-o^']?[)(\]\[dpo/\\|*3@$]+)",
      R"([)(\]\[/\\|][-o^']?[:;=])",
      R"([o0]_[o0])",
      R"([-^>]_[-^<])",
      R"(t_t)",
      R"(;_;)",
      R"(xd+)",
      R"(<3+)",
      R"(</3)",
      R"(\^\^)",
      R"(:'\()",
  };
}

LexiconSet::LexiconSet() { SetEmoticonPatterns(DefaultEmoticonPatterns()); }

void LexiconSet::Add(LexiconId id, const std::vector<std::string>& entries) {
  if (id == LexiconId::kPosLexicon) {
    AddPosLexicon(entries);
    return;
  }
  if (sets_.contains(id)) {
    throw LexiconError(fmt::format("duplicate lexicon '{}'", LexiconName(id)));
  }
  auto& set = sets_[id];
  for (const std::string& raw : entries) {
    std::string key = NormalizeEntry(raw);
    if (!key.empty()) set.insert(std::move(key));
  }
}

void LexiconSet::AddPosLexicon(const std::vector<std::string>& lines) {
  if (sets_.contains(LexiconId::kPosLexicon)) {
    throw LexiconError("duplicate lexicon 'pos_lexicon'");
  }
  auto& set = sets_[LexiconId::kPosLexicon];
  for (const std::string& line : lines) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LexiconError(fmt::format("pos_lexicon line without tab: '{}'", line));
    }
    std::string key = NormalizeEntry(line.substr(0, tab));
    std::vector<Pos> classes;
    std::stringstream tags(line.substr(tab + 1));
    std::string tag;
    while (std::getline(tags, tag, ',')) {
      auto pos = ParsePos(Trim(tag));
      if (!pos) {
        throw LexiconError(fmt::format("unknown class '{}' for '{}'", tag, key));
      }
      classes.push_back(*pos);
    }
    if (key.empty() || classes.empty()) continue;
    // First occurrence wins, matching the lowercase-dedup rule.
    if (set.insert(key).second) pos_.emplace(key, std::move(classes));
  }
}

void LexiconSet::SetEmoticonPatterns(const std::vector<std::string>& patterns) {
  emoticons_.clear();
  for (const std::string& p : patterns) {
    try {
      emoticons_.push_back(
          {p, std::regex(p, std::regex::ECMAScript | std::regex::icase)});
    } catch (const std::regex_error& e) {
      throw LexiconError(fmt::format("bad emoticon pattern '{}': {}", p, e.what()));
    }
  }
}

LexiconSet LexiconSet::Load(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw LexiconError(
        fmt::format("lexicon directory '{}' not found", directory.string()));
  }
  LexiconSet set;
  for (LexiconId id : kAllLexiconIds) {
    const auto path = directory / (std::string(LexiconName(id)) + ".txt");
    if (!std::filesystem::exists(path)) {
      throw LexiconError(fmt::format("lexicon '{}' not found", LexiconName(id)));
    }
    set.Add(id, ReadLines(path));
  }
  const auto emoticons = directory / "emoticons.txt";
  if (std::filesystem::exists(emoticons)) {
    std::vector<std::string> patterns;
    for (const std::string& line : ReadLines(emoticons)) {
      patterns.push_back(Trim(line));
    }
    set.SetEmoticonPatterns(patterns);
  }
  return set;
}

bool LexiconSet::Has(LexiconId id) const { return sets_.contains(id); }

std::size_t LexiconSet::size() const { return sets_.size(); }

bool LexiconSet::Contains(LexiconId id, std::string_view key) const {
  auto it = sets_.find(id);
  return it != sets_.end() && it->second.find(key) != it->second.end();
}

const std::set<std::string, std::less<>>& LexiconSet::Entries(LexiconId id) const {
  static const std::set<std::string, std::less<>> kEmpty;
  auto it = sets_.find(id);
  return it == sets_.end() ? kEmpty : it->second;
}

const std::vector<Pos>* LexiconSet::PosOf(std::string_view key) const {
  auto it = pos_.find(key);
  return it == pos_.end() ? nullptr : &it->second;
}

std::filesystem::path DefaultLexiconDirectory() {
  if (const char* env = std::getenv("FORMALITY_LEXICONS"); env && *env) {
    return env;
  }
  return FORMALITY_DEFAULT_LEXICON_DIR;
}

}  // namespace formality
