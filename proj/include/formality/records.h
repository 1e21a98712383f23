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

// Line-delimited dataset records and plain-text corpus readers.
//
// One JSON object per line with fields, in this order:
//   id, text, level (0/1/2), split, triple_id?, direction?, provenance?

#ifndef FORMALITY_RECORDS_H_
#define FORMALITY_RECORDS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "formality/classifier.h"

namespace formality {

// Intended target of a style-transfer record.
enum class Direction { kInformalToFormal, kFormalToInformal };

std::string_view DirectionName(Direction direction);  // "I->F" / "F->I"
// Accepts the ASCII arrow and U+2192.
std::optional<Direction> ParseDirection(std::string_view text);

struct DatasetRecord {
  std::string id;
  std::string text;
  FormalityLabel level = FormalityLabel::kCasual;
  std::string split;
  std::optional<std::string> triple_id;
  std::optional<Direction> direction;
  std::optional<nlohmann::ordered_json> provenance;

  bool operator==(const DatasetRecord&) const = default;
};

nlohmann::ordered_json RecordToJson(const DatasetRecord& record);
// Throws DataError naming the offending field.
DatasetRecord RecordFromJson(const nlohmann::json& json);

std::string SerializeRecords(const std::vector<DatasetRecord>& records);
void WriteRecords(const std::filesystem::path& path, const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> ReadRecords(const std::filesystem::path& path);

// Non-empty lines, trailing CR removed.
std::vector<std::string> ReadLines(const std::filesystem::path& path);
// Record texts for a .jsonl file, lines otherwise.
std::vector<std::string> ReadSentences(const std::filesystem::path& path);

void WriteText(const std::filesystem::path& path, std::string_view content);
std::string ReadText(const std::filesystem::path& path);

}  // namespace formality

#endif  // FORMALITY_RECORDS_H_
