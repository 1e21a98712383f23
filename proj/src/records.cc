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

#include "formality/records.h"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "formality/error.h"

namespace formality {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kInformalToFormal ? "I->F" : "F->I";
}

std::optional<Direction> ParseDirection(std::string_view text) {
  if (text == "I->F" || text == "I→F") return Direction::kInformalToFormal;
  if (text == "F->I" || text == "F→I") return Direction::kFormalToInformal;
  return std::nullopt;
}

ordered_json RecordToJson(const DatasetRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["text"] = r.text;
  j["level"] = LabelCode(r.level);
  j["split"] = r.split;
  if (r.triple_id) j["triple_id"] = *r.triple_id;
  if (r.direction) j["direction"] = DirectionName(*r.direction);
  if (r.provenance) j["provenance"] = *r.provenance;
  return j;
}

DatasetRecord RecordFromJson(const json& j) {
  if (!j.is_object()) throw DataError("record is not a JSON object");
  auto field = [&](const char* name) -> const json& {
    auto it = j.find(name);
    if (it == j.end()) throw DataError(fmt::format("record lacks field '{}'", name));
    return *it;
  };
  DatasetRecord r;
  try {
    r.id = field("id").is_string() ? field("id").get<std::string>() : field("id").dump();
    r.text = field("text").get<std::string>();
    const auto level = LabelFromInt(field("level").get<long>());
    if (!level) throw DataError(fmt::format("record '{}': level must be 0, 1 or 2", r.id));
    r.level = *level;
    r.split = j.value("split", "");
    if (auto it = j.find("triple_id"); it != j.end() && !it->is_null()) {
      r.triple_id = it->get<std::string>();
    }
    if (auto it = j.find("direction"); it != j.end() && !it->is_null()) {
      const auto d = ParseDirection(it->get<std::string>());
      if (!d) throw DataError(fmt::format("record '{}': bad direction {}", r.id, it->dump()));
      r.direction = *d;
    }
    if (auto it = j.find("provenance"); it != j.end() && !it->is_null()) {
      r.provenance = ordered_json::parse(it->dump());
    }
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed record: {}", e.what()));
  }
  return r;
}

std::string SerializeRecords(const std::vector<DatasetRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += RecordToJson(r).dump();
    out += '\n';
  }
  return out;
}

void WriteText(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << content;
  if (!out) throw DataError(fmt::format("write to '{}' failed", path.string()));
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteRecords(const std::filesystem::path& path, const std::vector<DatasetRecord>& records) {
  WriteText(path, SerializeRecords(records));
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read '{}'", path.string()));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<DatasetRecord> ReadRecords(const std::filesystem::path& path) {
  std::vector<DatasetRecord> records;
  std::size_t n = 0;
  for (const std::string& line : ReadLines(path)) {
    ++n;
    try {
      records.push_back(RecordFromJson(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw DataError(fmt::format("{} record {}: {}", path.string(), n, e.what()));
    } catch (const DataError& e) {
      throw DataError(fmt::format("{} record {}: {}", path.string(), n, e.what()));
    }
  }
  return records;
}

std::vector<std::string> ReadSentences(const std::filesystem::path& path) {
  if (path.extension() != ".jsonl") return ReadLines(path);
  std::vector<std::string> texts;
  for (auto& r : ReadRecords(path)) texts.push_back(std::move(r.text));
  return texts;
}

}  // namespace formality
