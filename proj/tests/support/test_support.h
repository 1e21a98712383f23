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

// Shared helpers for the test binaries: the bundled lexicons, scratch
// directories and small seeded generators.

#ifndef FORMALITY_TESTS_TEST_SUPPORT_H_
#define FORMALITY_TESTS_TEST_SUPPORT_H_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "formality/lexicon.h"

namespace formality::testing {

inline std::shared_ptr<const LexiconSet> Lexicons() {
  static const auto set =
      std::make_shared<const LexiconSet>(LexiconSet::Load(FORMALITY_DEFAULT_LEXICON_DIR));
  return set;
}

inline std::filesystem::path FixturePath(const std::string& name) {
  return std::filesystem::path(FORMALITY_TEST_FIXTURES) / name;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("formality-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  // Inclusive range.
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double Real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& Pick(const std::vector<T>& pool) {
    return pool[static_cast<std::size_t>(Int(0, static_cast<int>(pool.size()) - 1))];
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Clauses that carry no marker of any tier.
inline const std::vector<std::string>& NeutralClauses() {
  static const std::vector<std::string> pool = {
      "the dog sits near the house", "a cat runs by the river",
      "the old man reads a book",    "my friend looks at home",
      "the weather stays quiet",     "the train leaves at noon",
      "a bird sang in the garden",   "the shop opens on monday",
  };
  return pool;
}

inline const std::vector<std::string>& InformalMarkers() {
  static const std::vector<std::string> pool = {"lol", "omg", "idk",  "😂",   ":)",
                                                "sooo", "wow", "dude", "brb", "im"};
  return pool;
}

inline const std::vector<std::string>& CasualMarkers() {
  static const std::vector<std::string> pool = {"can't", "don't", "we'll", "you",
                                                "info",  "pics",  "it's",  "your"};
  return pool;
}

inline const std::vector<std::string>& FormalMarkers() {
  static const std::vector<std::string> pool = {"it appears that", "presumably",
                                                "transformation",  "was adopted",
                                                "may suggest",     "an implementation"};
  return pool;
}

// A neutral clause with each tier's markers injected at random word
// boundaries. Returns the sentence and which tiers were injected.
struct Injected {
  std::string text;
  bool informal = false;
  bool casual = false;
  bool formal = false;
};

inline Injected InjectMarkers(Gen& gen) {
  std::vector<std::string> words;
  {
    std::string clause = gen.Pick(NeutralClauses());
    std::size_t start = 0;
    for (std::size_t i = 0; i <= clause.size(); ++i) {
      if (i == clause.size() || clause[i] == ' ') {
        words.push_back(clause.substr(start, i - start));
        start = i + 1;
      }
    }
  }
  Injected out;
  auto insert = [&](const std::string& marker) {
    const int at = gen.Int(0, static_cast<int>(words.size()));
    words.insert(words.begin() + at, marker);
  };
  out.informal = gen.Chance(0.4);
  out.casual = gen.Chance(0.5);
  out.formal = gen.Chance(0.5);
  if (out.informal) insert(gen.Pick(InformalMarkers()));
  if (out.casual) insert(gen.Pick(CasualMarkers()));
  if (out.formal) insert(gen.Pick(FormalMarkers()));
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.text += ' ';
    out.text += words[i];
  }
  if (gen.Chance(0.5)) out.text += '.';
  return out;
}

}  // namespace formality::testing

#endif  // FORMALITY_TESTS_TEST_SUPPORT_H_
