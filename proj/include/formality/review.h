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

// Human review queue. Every mutation is an event appended to a JSONL log;
// live state is the fold of that log, optionally starting from a snapshot.

#ifndef FORMALITY_REVIEW_H_
#define FORMALITY_REVIEW_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "formality/classifier.h"
#include "formality/error.h"
#include "formality/pipeline.h"

namespace formality {

class ReviewError : public Error {
 public:
  enum class Code { kNotFound = 404, kConflict = 409, kInvalid = 422 };
  ReviewError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }
  int http_status() const { return static_cast<int>(code_); }

 private:
  Code code_;
};

enum class Variant { kAnchor, kFormal, kInformal };
std::string_view VariantName(Variant variant);
std::optional<Variant> ParseVariant(std::string_view name);
FormalityLabel VariantLevel(Variant variant);

enum class VerdictKind { kAccept, kRelabel, kRevise };

struct Verdict {
  VerdictKind kind = VerdictKind::kAccept;
  std::optional<FormalityLabel> to_level;   // relabel only
  std::optional<std::string> edited_text;   // revise only

  // Category used for voting and agreement: "accept", "relabel:<n>",
  // "revise".
  std::string Category() const;
  bool operator==(const Verdict&) const = default;
};

// Validates the wire shape {verdict, to_level?, edited_text?}; throws
// ReviewError kInvalid.
Verdict ParseVerdict(const nlohmann::json& body);
nlohmann::ordered_json VerdictToJson(const Verdict& verdict);

struct Decision {
  std::string annotator;
  Verdict verdict;
  std::string timestamp;
  bool operator==(const Decision&) const = default;
};

struct ReviewItem {
  std::string id;  // "<triple id>:<variant>"
  std::string triple_id;
  Variant variant = Variant::kAnchor;
  std::string text;
  FormalityLabel proposed = FormalityLabel::kCasual;
  FormalityLabel classified = FormalityLabel::kCasual;
  std::vector<FeatureEvidence> evidence;
  std::vector<Decision> decisions;
  std::optional<Verdict> final;
  bool manual_final = false;
  bool escalated = false;
  int revisions = 0;
  std::size_t sequence = 0;  // enqueue order

  std::string Status() const;  // pending, escalated, accepted, relabeled
  bool operator==(const ReviewItem&) const = default;
};

nlohmann::ordered_json ItemToJson(const ReviewItem& item);

struct TaskAgreement {
  std::string task;
  std::size_t items = 0;
  std::optional<double> kappa;
  std::string note;  // why kappa is empty
};

struct AgreementReport {
  std::vector<TaskAgreement> tasks;  // anchor, formal, informal, all
  std::map<std::string, std::size_t> status_counts;
};

nlohmann::ordered_json AgreementToJson(const AgreementReport& report);

struct ReviewConfig {
  std::size_t annotators_per_item = 3;
  std::size_t snapshot_every = 100;  // events; 0 disables
};

class ReviewStore {
 public:
  using Clock = std::function<std::string()>;

  // Replays `log_path` (after the snapshot, if one exists). Paths may be
  // empty for an in-memory store.
  ReviewStore(std::shared_ptr<const LexiconSet> lexicons, ReviewConfig config = {},
              std::filesystem::path log_path = {}, std::filesystem::path snapshot_path = {},
              Clock clock = nullptr);

  void RegisterAnnotator(const std::string& annotator);
  bool HasAnnotator(const std::string& annotator) const;
  // Returns the queue size.
  std::size_t Enqueue(const std::vector<StyleTriple>& triples);
  // The undecided open item with the most decisions, then enqueue order.
  std::optional<ReviewItem> NextItem(const std::string& annotator) const;
  ReviewItem SubmitDecision(const std::string& item_id, const std::string& annotator,
                            const Verdict& verdict);
  // Final verdict for an escalated item.
  ReviewItem Resolve(const std::string& item_id, const Verdict& verdict,
                     const std::string& resolver);
  ReviewItem GetItem(const std::string& item_id) const;
  // Throws ReviewError kConflict when no item is complete.
  AgreementReport Agreement() const;
  std::vector<DatasetRecord> ExportAccepted() const;
  std::size_t size() const;
  std::pair<std::size_t, std::size_t> Progress(const std::string& annotator) const;

  // Canonical dump of the whole state, for replay comparison.
  nlohmann::ordered_json StateJson() const;
  void WriteSnapshot();

 private:
  void Append(const nlohmann::ordered_json& event);
  void Apply(const nlohmann::json& event);
  void ApplyDecision(ReviewItem& item, const Decision& decision);
  void Reclassify(ReviewItem& item);
  void LoadSnapshot();
  void WriteSnapshotLocked();

  std::shared_ptr<const LexiconSet> lexicons_;
  ReviewConfig config_;
  std::filesystem::path log_path_;
  std::filesystem::path snapshot_path_;
  Clock clock_;
  mutable std::shared_mutex mu_;
  std::unique_ptr<std::ofstream> log_;
  std::set<std::string> annotators_;
  std::map<std::string, ReviewItem> items_;
  std::size_t events_ = 0;
};

}  // namespace formality

#endif  // FORMALITY_REVIEW_H_
