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

#include "formality/review.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <mutex>

#include <fmt/format.h>

#include "formality/corpus_metrics.h"
#include "formality/records.h"

namespace formality {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kVariantNames = {"anchor", "formal", "informal"};

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Verdict VerdictFromCategory(const std::string& category) {
  if (category == "accept") return {VerdictKind::kAccept, std::nullopt, std::nullopt};
  return {VerdictKind::kRelabel,
          LabelFromInt(std::stol(category.substr(category.find(':') + 1))), std::nullopt};
}

std::string_view BranchName(FormalityLabel label, const std::vector<FeatureEvidence>& evidence) {
  if (label == FormalityLabel::kInformal) return "informal-tier";
  if (label == FormalityLabel::kFormal) return "formal-tier";
  const bool casual = std::any_of(evidence.begin(), evidence.end(), [](const auto& e) {
    return TierOf(e.kind) == Tier::kCasual;
  });
  return casual ? "casual-tier" : "default-casual";
}

Decision DecisionFromJson(const json& j) {
  return {j.at("annotator").get<std::string>(), ParseVerdict(j.at("verdict")),
          j.value("timestamp", "")};
}

ordered_json DecisionToJson(const Decision& d) {
  return {{"annotator", d.annotator},
          {"verdict", VerdictToJson(d.verdict)},
          {"timestamp", d.timestamp}};
}

}  // namespace

std::string_view VariantName(Variant variant) {
  return kVariantNames[static_cast<std::size_t>(variant)];
}

std::optional<Variant> ParseVariant(std::string_view name) {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == name) return static_cast<Variant>(i);
  }
  return std::nullopt;
}

FormalityLabel VariantLevel(Variant variant) {
  switch (variant) {
    case Variant::kAnchor:
      return FormalityLabel::kCasual;
    case Variant::kFormal:
      return FormalityLabel::kFormal;
    case Variant::kInformal:
      return FormalityLabel::kInformal;
  }
  return FormalityLabel::kCasual;
}

std::string Verdict::Category() const {
  switch (kind) {
    case VerdictKind::kAccept:
      return "accept";
    case VerdictKind::kRelabel:
      return fmt::format("relabel:{}", LabelCode(to_level.value_or(FormalityLabel::kCasual)));
    case VerdictKind::kRevise:
      return "revise";
  }
  return "unknown";
}

Verdict ParseVerdict(const json& body) {
  auto invalid = [](const std::string& why) {
    return ReviewError(ReviewError::Code::kInvalid, why);
  };
  if (!body.is_object()) throw invalid("verdict body must be an object");
  auto it = body.find("verdict");
  if (it == body.end() || !it->is_string()) throw invalid("missing verdict");
  const std::string kind = it->get<std::string>();
  Verdict v;
  if (kind == "accept") {
    v.kind = VerdictKind::kAccept;
  } else if (kind == "relabel") {
    v.kind = VerdictKind::kRelabel;
    auto level = body.find("to_level");
    if (level == body.end() || !level->is_number_integer()) {
      throw invalid("relabel needs an integer to_level");
    }
    v.to_level = LabelFromInt(level->get<long>());
    if (!v.to_level) throw invalid("to_level must be 0, 1 or 2");
  } else if (kind == "revise") {
    v.kind = VerdictKind::kRevise;
    auto text = body.find("edited_text");
    if (text == body.end() || !text->is_string() ||
        text->get<std::string>().find_first_not_of(" \t\r\n") == std::string::npos) {
      throw invalid("revise needs non-empty edited_text");
    }
    v.edited_text = text->get<std::string>();
  } else {
    throw invalid(fmt::format("unknown verdict '{}'", kind));
  }
  return v;
}

ordered_json VerdictToJson(const Verdict& v) {
  ordered_json j;
  switch (v.kind) {
    case VerdictKind::kAccept:
      j["verdict"] = "accept";
      break;
    case VerdictKind::kRelabel:
      j["verdict"] = "relabel";
      j["to_level"] = LabelCode(*v.to_level);
      break;
    case VerdictKind::kRevise:
      j["verdict"] = "revise";
      j["edited_text"] = *v.edited_text;
      break;
  }
  return j;
}

std::string ReviewItem::Status() const {
  if (final) return final->kind == VerdictKind::kAccept ? "accepted" : "relabeled";
  return escalated ? "escalated" : "pending";
}

ordered_json ItemToJson(const ReviewItem& item) {
  ordered_json evidence = ordered_json::array();
  for (const auto& e : item.evidence) {
    evidence.push_back({{"kind", FeatureName(e.kind)},
                        {"tier", TierName(TierOf(e.kind))},
                        {"start", e.span.start},
                        {"end", e.span.end},
                        {"matched", e.matched}});
  }
  ordered_json decisions = ordered_json::array();
  for (const auto& d : item.decisions) decisions.push_back(DecisionToJson(d));
  ordered_json j;
  j["id"] = item.id;
  j["triple_id"] = item.triple_id;
  j["variant"] = VariantName(item.variant);
  j["text"] = item.text;
  j["proposed_label"] = LabelCode(item.proposed);
  j["classified_label"] = LabelCode(item.classified);
  j["branch"] = BranchName(item.classified, item.evidence);
  j["evidence"] = evidence;
  j["decisions"] = decisions;
  j["final"] = item.final ? VerdictToJson(*item.final) : ordered_json(nullptr);
  j["manual_final"] = item.manual_final;
  j["escalated"] = item.escalated;
  j["status"] = item.Status();
  j["revisions"] = item.revisions;
  j["sequence"] = item.sequence;
  return j;
}

ordered_json AgreementToJson(const AgreementReport& report) {
  ordered_json tasks = ordered_json::array();
  for (const auto& t : report.tasks) {
    tasks.push_back({{"task", t.task},
                     {"items", t.items},
                     {"kappa", t.kappa ? ordered_json(*t.kappa) : ordered_json(nullptr)},
                     {"note", t.note}});
  }
  return {{"tasks", tasks}, {"status_counts", report.status_counts}};
}

ReviewStore::ReviewStore(std::shared_ptr<const LexiconSet> lexicons, ReviewConfig config,
                         std::filesystem::path log_path, std::filesystem::path snapshot_path,
                         Clock clock)
    : lexicons_(std::move(lexicons)),
      config_(config),
      log_path_(std::move(log_path)),
      snapshot_path_(std::move(snapshot_path)),
      clock_(clock ? std::move(clock) : Clock(UtcNow)) {
  if (!lexicons_) throw UsageError("review store needs lexicons");
  if (config_.annotators_per_item < 2) throw UsageError("need at least 2 annotators per item");
  std::size_t skip = 0;
  if (!snapshot_path_.empty() && std::filesystem::exists(snapshot_path_)) {
    LoadSnapshot();
    skip = events_;
  }
  if (!log_path_.empty()) {
    if (std::filesystem::exists(log_path_)) {
      std::size_t line_no = 0;
      for (const std::string& line : ReadLines(log_path_)) {
        if (++line_no <= skip) continue;
        try {
          Apply(json::parse(line));
        } catch (const std::exception& e) {
          throw DataError(fmt::format("{}:{}: {}", log_path_.string(), line_no, e.what()));
        }
        ++events_;
      }
      if (line_no < skip) {
        throw DataError(fmt::format("snapshot is ahead of the event log ({} > {})", skip,
                                    line_no));
      }
    }
    log_ = std::make_unique<std::ofstream>(log_path_, std::ios::app);
    if (!*log_) throw DataError(fmt::format("cannot open '{}'", log_path_.string()));
  }
}

void ReviewStore::Append(const ordered_json& event) {
  if (log_) {
    *log_ << event.dump() << '\n';
    log_->flush();
    if (!*log_) throw DataError("event log write failed");
  }
  Apply(json::parse(event.dump()));
  ++events_;
  if (config_.snapshot_every > 0 && events_ % config_.snapshot_every == 0) {
    WriteSnapshotLocked();
  }
}

void ReviewStore::Reclassify(ReviewItem& item) {
  LabeledSentence labeled = Classify(item.text, *lexicons_);
  item.classified = labeled.label;
  item.evidence = std::move(labeled.evidence);
}

void ReviewStore::ApplyDecision(ReviewItem& item, const Decision& decision) {
  if (decision.verdict.kind == VerdictKind::kRevise) {
    item.text = *decision.verdict.edited_text;
    item.decisions.clear();
    item.escalated = false;
    ++item.revisions;
    Reclassify(item);
    return;
  }
  item.decisions.push_back(decision);
  if (item.decisions.size() < config_.annotators_per_item) return;
  std::vector<std::string> categories;
  for (const auto& d : item.decisions) categories.push_back(d.verdict.Category());
  std::optional<std::string> winner;
  if (categories.size() == 3) {
    winner = MajorityVote(categories).winner;
  } else {
    for (const auto& c : categories) {
      if (2 * std::count(categories.begin(), categories.end(), c) > static_cast<long>(categories.size())) {
        winner = c;
      }
    }
  }
  if (winner) {
    item.final = VerdictFromCategory(*winner);
  } else {
    item.escalated = true;
  }
}

void ReviewStore::Apply(const json& event) {
  const std::string type = event.at("type").get<std::string>();
  if (type == "register") {
    annotators_.insert(event.at("annotator").get<std::string>());
  } else if (type == "enqueue") {
    ReviewItem item;
    item.triple_id = event.at("triple_id").get<std::string>();
    item.variant = *ParseVariant(event.at("variant").get<std::string>());
    item.id = fmt::format("{}:{}", item.triple_id, VariantName(item.variant));
    item.text = event.at("text").get<std::string>();
    item.proposed = VariantLevel(item.variant);
    item.sequence = items_.size();
    Reclassify(item);
    items_.emplace(item.id, std::move(item));
  } else if (type == "decision") {
    ApplyDecision(items_.at(event.at("item").get<std::string>()),
                  DecisionFromJson(event));
  } else if (type == "resolve") {
    ReviewItem& item = items_.at(event.at("item").get<std::string>());
    item.final = ParseVerdict(event.at("verdict"));
    item.manual_final = true;
    item.escalated = false;
  } else {
    throw DataError(fmt::format("unknown event type '{}'", type));
  }
}

void ReviewStore::RegisterAnnotator(const std::string& annotator) {
  if (annotator.empty()) throw ReviewError(ReviewError::Code::kInvalid, "empty annotator id");
  std::unique_lock lock(mu_);
  if (annotators_.contains(annotator)) return;
  Append({{"type", "register"}, {"annotator", annotator}});
}

bool ReviewStore::HasAnnotator(const std::string& annotator) const {
  std::shared_lock lock(mu_);
  return annotators_.contains(annotator);
}

std::size_t ReviewStore::Enqueue(const std::vector<StyleTriple>& triples) {
  std::unique_lock lock(mu_);
  for (const StyleTriple& t : triples) {
    const std::array<std::pair<Variant, const std::string*>, 3> variants = {
        {{Variant::kAnchor, &t.anchor}, {Variant::kFormal, &t.formal},
         {Variant::kInformal, &t.informal}}};
    for (const auto& [variant, text] : variants) {
      if (items_.contains(fmt::format("{}:{}", t.id, VariantName(variant)))) continue;
      Append({{"type", "enqueue"},
              {"triple_id", t.id},
              {"variant", VariantName(variant)},
              {"text", *text}});
    }
  }
  return items_.size();
}

std::optional<ReviewItem> ReviewStore::NextItem(const std::string& annotator) const {
  std::shared_lock lock(mu_);
  if (!annotators_.contains(annotator)) {
    throw ReviewError(ReviewError::Code::kNotFound,
                      fmt::format("unknown annotator '{}'", annotator));
  }
  const ReviewItem* best = nullptr;
  for (const auto& [id, item] : items_) {
    if (item.final || item.escalated) continue;
    const bool decided = std::any_of(item.decisions.begin(), item.decisions.end(),
                                     [&](const Decision& d) { return d.annotator == annotator; });
    if (decided) continue;
    if (!best || item.decisions.size() > best->decisions.size() ||
        (item.decisions.size() == best->decisions.size() && item.sequence < best->sequence)) {
      best = &item;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

ReviewItem ReviewStore::SubmitDecision(const std::string& item_id, const std::string& annotator,
                                       const Verdict& verdict) {
  std::unique_lock lock(mu_);
  auto it = items_.find(item_id);
  if (it == items_.end()) {
    throw ReviewError(ReviewError::Code::kNotFound, fmt::format("unknown item '{}'", item_id));
  }
  if (!annotators_.contains(annotator)) {
    throw ReviewError(ReviewError::Code::kNotFound,
                      fmt::format("unknown annotator '{}'", annotator));
  }
  const ReviewItem& item = it->second;
  if (item.final || item.escalated) {
    throw ReviewError(ReviewError::Code::kConflict,
                      fmt::format("item '{}' is already {}", item_id, item.Status()));
  }
  for (const Decision& d : item.decisions) {
    if (d.annotator == annotator) {
      throw ReviewError(ReviewError::Code::kConflict,
                        fmt::format("annotator '{}' already decided '{}'", annotator, item_id));
    }
  }
  if (verdict.kind == VerdictKind::kRelabel && !verdict.to_level) {
    throw ReviewError(ReviewError::Code::kInvalid, "relabel needs to_level");
  }
  if (verdict.kind == VerdictKind::kRevise &&
      (!verdict.edited_text || verdict.edited_text->empty())) {
    throw ReviewError(ReviewError::Code::kInvalid, "revise needs edited_text");
  }
  ordered_json event = {{"type", "decision"},
                        {"item", item_id},
                        {"annotator", annotator},
                        {"verdict", VerdictToJson(verdict)},
                        {"timestamp", clock_()}};
  Append(event);
  return items_.at(item_id);
}

ReviewItem ReviewStore::Resolve(const std::string& item_id, const Verdict& verdict,
                                const std::string& resolver) {
  std::unique_lock lock(mu_);
  auto it = items_.find(item_id);
  if (it == items_.end()) {
    throw ReviewError(ReviewError::Code::kNotFound, fmt::format("unknown item '{}'", item_id));
  }
  if (!it->second.escalated) {
    throw ReviewError(ReviewError::Code::kConflict,
                      fmt::format("item '{}' is not escalated", item_id));
  }
  if (verdict.kind == VerdictKind::kRevise) {
    throw ReviewError(ReviewError::Code::kInvalid, "an escalation resolves to accept or relabel");
  }
  Append({{"type", "resolve"},
          {"item", item_id},
          {"verdict", VerdictToJson(verdict)},
          {"resolver", resolver},
          {"timestamp", clock_()}});
  return items_.at(item_id);
}

ReviewItem ReviewStore::GetItem(const std::string& item_id) const {
  std::shared_lock lock(mu_);
  auto it = items_.find(item_id);
  if (it == items_.end()) {
    throw ReviewError(ReviewError::Code::kNotFound, fmt::format("unknown item '{}'", item_id));
  }
  return it->second;
}

AgreementReport ReviewStore::Agreement() const {
  std::shared_lock lock(mu_);
  static const std::vector<std::string> kCategories = {"accept", "relabel:0", "relabel:1",
                                                       "relabel:2"};
  AgreementReport report;
  std::map<std::string, std::vector<std::vector<std::string>>> ratings;
  std::size_t completed = 0;
  for (const auto& [id, item] : items_) {
    ++report.status_counts[item.Status()];
    if (item.decisions.size() != config_.annotators_per_item) continue;
    std::vector<std::string> row;
    for (const auto& d : item.decisions) row.push_back(d.verdict.Category());
    ratings[std::string(VariantName(item.variant))].push_back(row);
    ratings["all"].push_back(std::move(row));
    ++completed;
  }
  if (completed == 0) {
    throw ReviewError(ReviewError::Code::kConflict, "no item has a complete set of decisions");
  }
  for (const std::string task : {"anchor", "formal", "informal", "all"}) {
    TaskAgreement t;
    t.task = task;
    const auto& rows = ratings[task];
    t.items = rows.size();
    if (rows.empty()) {
      t.note = "no completed items";
    } else {
      try {
        t.kappa = FleissKappa(rows, kCategories);
      } catch (const UndefinedStatistic& e) {
        t.note = e.what();
      }
    }
    report.tasks.push_back(std::move(t));
  }
  return report;
}

std::vector<DatasetRecord> ReviewStore::ExportAccepted() const {
  std::shared_lock lock(mu_);
  std::vector<const ReviewItem*> accepted;
  for (const auto& [id, item] : items_) {
    if (item.final && item.final->kind == VerdictKind::kAccept) accepted.push_back(&item);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const ReviewItem* a, const ReviewItem* b) { return a->sequence < b->sequence; });
  std::vector<DatasetRecord> out;
  for (const ReviewItem* item : accepted) {
    DatasetRecord r;
    r.id = item->id;
    r.text = item->text;
    r.level = item->proposed;
    r.split = "reviewed";
    r.triple_id = item->triple_id;
    ordered_json prov;
    prov["variant"] = VariantName(item->variant);
    prov["revisions"] = item->revisions;
    prov["manual_final"] = item->manual_final;
    r.provenance = prov;
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t ReviewStore::size() const {
  std::shared_lock lock(mu_);
  return items_.size();
}

std::pair<std::size_t, std::size_t> ReviewStore::Progress(const std::string& annotator) const {
  std::shared_lock lock(mu_);
  std::size_t done = 0;
  for (const auto& [id, item] : items_) {
    if (item.final || item.escalated ||
        std::any_of(item.decisions.begin(), item.decisions.end(),
                    [&](const Decision& d) { return d.annotator == annotator; })) {
      ++done;
    }
  }
  return {done, items_.size()};
}

ordered_json ReviewStore::StateJson() const {
  std::shared_lock lock(mu_);
  ordered_json items = ordered_json::array();
  for (const auto& [id, item] : items_) items.push_back(ItemToJson(item));
  return {{"events", events_}, {"annotators", annotators_}, {"items", items}};
}

void ReviewStore::WriteSnapshot() {
  std::unique_lock lock(mu_);
  WriteSnapshotLocked();
}

void ReviewStore::WriteSnapshotLocked() {
  if (snapshot_path_.empty()) return;
  ordered_json items = ordered_json::array();
  for (const auto& [id, item] : items_) items.push_back(ItemToJson(item));
  const ordered_json state = {{"events", events_}, {"annotators", annotators_}, {"items", items}};
  const auto tmp = snapshot_path_.string() + ".tmp";
  WriteText(tmp, state.dump());
  std::filesystem::rename(tmp, snapshot_path_);
}

void ReviewStore::LoadSnapshot() {
  try {
    const json state = json::parse(ReadText(snapshot_path_));
    events_ = state.at("events").get<std::size_t>();
    for (const auto& a : state.at("annotators")) annotators_.insert(a.get<std::string>());
    for (const json& j : state.at("items")) {
      ReviewItem item;
      item.id = j.at("id").get<std::string>();
      item.triple_id = j.at("triple_id").get<std::string>();
      item.variant = *ParseVariant(j.at("variant").get<std::string>());
      item.text = j.at("text").get<std::string>();
      item.proposed = VariantLevel(item.variant);
      for (const json& d : j.at("decisions")) item.decisions.push_back(DecisionFromJson(d));
      if (!j.at("final").is_null()) item.final = ParseVerdict(j.at("final"));
      item.manual_final = j.at("manual_final").get<bool>();
      item.escalated = j.at("escalated").get<bool>();
      item.revisions = j.at("revisions").get<int>();
      item.sequence = j.at("sequence").get<std::size_t>();
      Reclassify(item);
      items_.emplace(item.id, std::move(item));
    }
  } catch (const json::exception& e) {
    throw DataError(fmt::format("snapshot '{}': {}", snapshot_path_.string(), e.what()));
  }
}

}  // namespace formality
