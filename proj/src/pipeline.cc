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

#include "formality/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <set>

#include <fmt/format.h>

#include "formality/digest.h"
#include "formality/parallel.h"

namespace formality {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 5> kStatusNames = {"draft", "validated", "in_review",
                                                          "accepted", "rejected"};
constexpr std::array<std::string_view, 3> kLevelSuffix = {"informal", "casual", "formal"};

ordered_json ProvenanceToJson(const VariantProvenance& p) {
  ordered_json decisions = ordered_json::array();
  for (FormalityLabel l : p.judge_decisions) decisions.push_back(LabelCode(l));
  ordered_json j;
  j["template"] = PromptName(p.prompt);
  j["revision_rounds"] = p.revision_rounds;
  j["judge_decisions"] = decisions;
  if (p.failure) j["failure"] = *p.failure;
  return j;
}

VariantProvenance ProvenanceFromJson(const json& j) {
  VariantProvenance p;
  const auto prompt = ParsePromptId(j.at("template").get<std::string>());
  if (!prompt) throw DataError("unknown template in provenance");
  p.prompt = *prompt;
  p.revision_rounds = j.value("revision_rounds", 0);
  for (const json& d : j.value("judge_decisions", json::array())) {
    const auto l = LabelFromInt(d.get<long>());
    if (!l) throw DataError("bad judge decision in provenance");
    p.judge_decisions.push_back(*l);
  }
  if (j.contains("failure")) p.failure = j.at("failure").get<std::string>();
  return p;
}

// Rewrites once, then revises until the classifier agrees or the cap is hit.
std::string BuildVariant(const std::string& anchor, FormalityLabel target, PromptId first,
                         PromptId revision, int max_revisions, Gateway& gateway,
                         const LexiconSet& lexicons, VariantProvenance& provenance) {
  provenance.prompt = first;
  std::string text = gateway.Rewrite(first, anchor);
  FormalityLabel label = Classify(text, lexicons).label;
  provenance.judge_decisions.push_back(label);
  while (label != target && provenance.revision_rounds < max_revisions) {
    ++provenance.revision_rounds;
    text = gateway.Rewrite(revision, anchor, {{"previous", text}});
    label = Classify(text, lexicons).label;
    provenance.judge_decisions.push_back(label);
  }
  if (label != target) {
    provenance.failure = fmt::format("classified {} after {} revision rounds, wanted {}",
                                     LabelName(label), provenance.revision_rounds,
                                     LabelName(target));
  }
  return text;
}

ordered_json RecordProvenance(const VariantProvenance* p, const std::string& source) {
  ordered_json j;
  if (p) {
    j = ProvenanceToJson(*p);
  } else {
    j["template"] = nullptr;
  }
  j["source"] = source;
  return j;
}

void Finish(DatasetManifest& m, const ordered_json& config) {
  m.config = config;
  m.config_digest = Sha256Hex(config.dump());
}

}  // namespace

std::string_view TripleStatusName(TripleStatus status) {
  return kStatusNames[static_cast<std::size_t>(status)];
}

std::optional<TripleStatus> ParseTripleStatus(std::string_view name) {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i) {
    if (kStatusNames[i] == name) return static_cast<TripleStatus>(i);
  }
  return std::nullopt;
}

ordered_json TripleToJson(const StyleTriple& t) {
  ordered_json j;
  j["id"] = t.id;
  j["anchor"] = t.anchor;
  j["formal"] = t.formal;
  j["informal"] = t.informal;
  j["status"] = TripleStatusName(t.status);
  j["source"] = t.source;
  j["provenance"] = {{"formal", ProvenanceToJson(t.formal_provenance)},
                     {"informal", ProvenanceToJson(t.informal_provenance)}};
  return j;
}

StyleTriple TripleFromJson(const json& j) {
  StyleTriple t;
  try {
    t.id = j.at("id").get<std::string>();
    t.anchor = j.at("anchor").get<std::string>();
    t.formal = j.value("formal", "");
    t.informal = j.value("informal", "");
    const auto status = ParseTripleStatus(j.value("status", "draft"));
    if (!status) throw DataError(fmt::format("triple '{}': unknown status", t.id));
    t.status = *status;
    t.source = j.value("source", "");
    if (j.contains("provenance")) {
      const json& p = j.at("provenance");
      if (p.contains("formal")) t.formal_provenance = ProvenanceFromJson(p.at("formal"));
      if (p.contains("informal")) t.informal_provenance = ProvenanceFromJson(p.at("informal"));
    }
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed triple: {}", e.what()));
  }
  return t;
}

void WriteTriples(const std::filesystem::path& path, const std::vector<StyleTriple>& triples) {
  std::string out;
  for (const auto& t : triples) out += TripleToJson(t).dump() + "\n";
  WriteText(path, out);
}

std::vector<StyleTriple> ReadTriples(const std::filesystem::path& path) {
  std::vector<StyleTriple> triples;
  for (const std::string& line : ReadLines(path)) {
    try {
      triples.push_back(TripleFromJson(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw DataError(fmt::format("{}: {}", path.string(), e.what()));
    }
  }
  return triples;
}

AnchorExtraction ExtractCasualAnchors(const std::vector<std::string>& corpus, LabelJudge& judge,
                                      int jobs) {
  std::vector<std::optional<FormalityLabel>> labels(corpus.size());
  ParallelFor(corpus.size(), jobs, [&](std::size_t i) {
    try {
      labels[i] = judge.Label(corpus[i]);
    } catch (const GatewayError&) {
      labels[i].reset();
    }
  });
  AnchorExtraction out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!labels[i]) {
      ++out.failed;
      continue;
    }
    ++out.tally[LabelCode(*labels[i])];
    if (*labels[i] == FormalityLabel::kCasual) out.anchors.push_back(corpus[i]);
  }
  return out;
}

std::string TripleId(std::size_t index) { return fmt::format("t{:06d}", index); }

StyleTriple BuildTriple(const std::string& id, const std::string& anchor, Gateway& gateway,
                        const LexiconSet& lexicons, const BuildOptions& options) {
  if (options.max_revisions < 0) throw UsageError("revision cap must be >= 0");
  StyleTriple t;
  t.id = id;
  t.anchor = anchor;
  t.source = options.source;
  t.formal_provenance.prompt = PromptId::kRewriteCasualToFormal;
  t.informal_provenance.prompt = PromptId::kRewriteCasualToInformal;
  VariantProvenance* current = &t.formal_provenance;
  try {
    t.formal = BuildVariant(anchor, FormalityLabel::kFormal, PromptId::kRewriteCasualToFormal,
                            PromptId::kRevisionFormal, options.max_revisions, gateway,
                            lexicons, t.formal_provenance);
    current = &t.informal_provenance;
    t.informal =
        BuildVariant(anchor, FormalityLabel::kInformal, PromptId::kRewriteCasualToInformal,
                     PromptId::kRevisionInformal, options.max_revisions, gateway, lexicons,
                     t.informal_provenance);
  } catch (const GatewayError& e) {
    current->failure = fmt::format("gateway: {}", e.what());
    t.status = TripleStatus::kDraft;
    throw TripleBuildError(t, fmt::format("triple {}: {}", id, e.what()));
  }
  const bool ok = !t.formal_provenance.failure && !t.informal_provenance.failure;
  t.status = ok ? TripleStatus::kValidated : TripleStatus::kDraft;
  return t;
}

std::vector<StyleTriple> BuildTriples(const std::vector<std::string>& anchors, Gateway& gateway,
                                      const LexiconSet& lexicons, const BuildOptions& options,
                                      int jobs) {
  std::vector<StyleTriple> out(anchors.size());
  ParallelFor(anchors.size(), jobs, [&](std::size_t i) {
    try {
      out[i] = BuildTriple(TripleId(i + 1), anchors[i], gateway, lexicons, options);
    } catch (const TripleBuildError& e) {
      out[i] = e.draft();
    }
  });
  return out;
}

NaivePair BuildNaivePair(const std::string& id, const std::string& informal, Gateway& gateway,
                         const LexiconSet& lexicons) {
  if (Classify(informal, lexicons).label != FormalityLabel::kInformal) {
    throw DataError(fmt::format("naive input '{}' is not Informal", id));
  }
  NaivePair p;
  p.id = id;
  p.informal = informal;
  p.provenance.prompt = PromptId::kRewriteInformalToFormalNaive;
  try {
    p.formal = gateway.Rewrite(PromptId::kRewriteInformalToFormalNaive, informal);
  } catch (const GatewayError& e) {
    p.provenance.failure = fmt::format("gateway: {}", e.what());
    throw;
  }
  const FormalityLabel label = Classify(p.formal, lexicons).label;
  p.provenance.judge_decisions.push_back(label);
  if (label == FormalityLabel::kFormal) {
    p.status = TripleStatus::kValidated;
  } else {
    p.provenance.failure = fmt::format("classified {}, wanted Formal", LabelName(label));
  }
  return p;
}

ordered_json ManifestToJson(const DatasetManifest& m) {
  ordered_json j;
  j["split"] = m.split;
  j["counts"] = {{"informal", m.counts[0]}, {"casual", m.counts[1]}, {"formal", m.counts[2]}};
  j["source_ids"] = m.source_ids;
  j["config"] = m.config;
  j["config_digest"] = m.config_digest;
  return j;
}

Dataset AssembleDataset(const std::vector<StyleTriple>& triples, const AssemblyOptions& options) {
  std::vector<const StyleTriple*> eligible;
  for (const auto& t : triples) {
    if (t.status == TripleStatus::kAccepted ||
        (options.accept_validated && t.status == TripleStatus::kValidated)) {
      eligible.push_back(&t);
    }
  }
  if (eligible.size() < options.quota) {
    throw DataError(fmt::format("need {} accepted triples, have {}", options.quota,
                                eligible.size()));
  }
  std::stable_sort(eligible.begin(), eligible.end(),
                   [](const StyleTriple* a, const StyleTriple* b) { return a->id < b->id; });
  Dataset d;
  d.manifest.split = options.split;
  for (std::size_t i = 0; i < options.quota; ++i) {
    const StyleTriple& t = *eligible[i];
    d.manifest.source_ids.push_back(t.id);
    const std::array<std::pair<const std::string*, const VariantProvenance*>, 3> variants = {
        {{&t.informal, &t.informal_provenance}, {&t.anchor, nullptr},
         {&t.formal, &t.formal_provenance}}};
    for (int level = 0; level < 3; ++level) {
      DatasetRecord r;
      r.id = fmt::format("{}-{}", t.id, kLevelSuffix[level]);
      r.text = *variants[level].first;
      r.level = static_cast<FormalityLabel>(level);
      r.split = options.split;
      r.triple_id = t.id;
      r.provenance = RecordProvenance(variants[level].second, t.source);
      d.records.push_back(std::move(r));
      ++d.manifest.counts[level];
    }
  }
  ordered_json config = options.config;
  config["quota"] = options.quota;
  config["accept_validated"] = options.accept_validated;
  Finish(d.manifest, config);
  return d;
}

Dataset AssembleNaiveDataset(const std::vector<NaivePair>& pairs, const AssemblyOptions& options) {
  std::vector<const NaivePair*> eligible;
  for (const auto& p : pairs) {
    if (p.status == TripleStatus::kAccepted ||
        (options.accept_validated && p.status == TripleStatus::kValidated)) {
      eligible.push_back(&p);
    }
  }
  if (eligible.size() < options.quota) {
    throw DataError(fmt::format("need {} accepted pairs, have {}", options.quota,
                                eligible.size()));
  }
  std::stable_sort(eligible.begin(), eligible.end(),
                   [](const NaivePair* a, const NaivePair* b) { return a->id < b->id; });
  Dataset d;
  d.manifest.split = options.split;
  for (std::size_t i = 0; i < options.quota; ++i) {
    const NaivePair& p = *eligible[i];
    d.manifest.source_ids.push_back(p.id);
    DatasetRecord informal{fmt::format("{}-informal", p.id), p.informal,
                           FormalityLabel::kInformal, options.split, p.id, std::nullopt,
                           RecordProvenance(nullptr, "naive")};
    DatasetRecord formal{fmt::format("{}-formal", p.id), p.formal, FormalityLabel::kFormal,
                         options.split, p.id, std::nullopt,
                         RecordProvenance(&p.provenance, "naive")};
    d.records.push_back(std::move(informal));
    d.records.push_back(std::move(formal));
    ++d.manifest.counts[0];
    ++d.manifest.counts[2];
  }
  ordered_json config = options.config;
  config["quota"] = options.quota;
  config["accept_validated"] = options.accept_validated;
  Finish(d.manifest, config);
  return d;
}

std::vector<PoolItem> ReadPool(const std::filesystem::path& path) {
  std::vector<PoolItem> pool;
  const bool jsonl = path.extension() == ".jsonl";
  for (const std::string& line : ReadLines(path)) {
    PoolItem item;
    if (jsonl) {
      try {
        const json j = json::parse(line);
        item.text = j.at("text").get<std::string>();
        if (j.contains("id")) {
          item.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
        }
        if (j.contains("score") && !j.at("score").is_null()) {
          item.score = j.at("score").get<double>();
        }
      } catch (const json::exception& e) {
        throw DataError(fmt::format("{}: {}", path.string(), e.what()));
      }
    } else {
      item.text = line;
    }
    if (item.id.empty()) item.id = std::to_string(pool.size() + 1);
    pool.push_back(std::move(item));
  }
  return pool;
}

std::uint64_t UniformIndex(std::uint64_t bound, std::mt19937_64& rng) {
  if (bound == 0) throw UsageError("empty sampling range");
  // Reject the low values that would bias the modulo.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  if (k > n) throw UsageError(fmt::format("cannot sample {} of {}", k, n));
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + UniformIndex(n - i, rng);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Dataset AssembleTestSet(const std::vector<PoolItem>& informal_pool,
                        const std::vector<PoolItem>& formal_pool, const TestSetOptions& options) {
  std::vector<const PoolItem*> formal;
  for (const auto& item : formal_pool) {
    if (!options.score_filter || (item.score && *item.score > 0.0)) formal.push_back(&item);
  }
  if (informal_pool.size() < options.per_side) {
    throw DataError(fmt::format("informal pool has {} items, need {}", informal_pool.size(),
                                options.per_side));
  }
  if (formal.size() < options.per_side) {
    throw DataError(fmt::format("formal pool has {} items after filtering, need {}",
                                formal.size(), options.per_side));
  }
  std::mt19937_64 rng(options.seed);
  const auto informal_idx = SampleIndices(informal_pool.size(), options.per_side, rng);
  const auto formal_idx = SampleIndices(formal.size(), options.per_side, rng);

  Dataset d;
  d.manifest.split = options.split;
  auto emit = [&](const PoolItem& item, Direction direction, FormalityLabel level,
                  std::string_view pool) {
    DatasetRecord r;
    r.id = fmt::format("{}-{}", pool, item.id);
    r.text = item.text;
    r.level = level;
    r.split = options.split;
    r.direction = direction;
    ordered_json prov;
    prov["pool"] = pool;
    prov["pool_id"] = item.id;
    prov["score"] = item.score ? ordered_json(*item.score) : ordered_json(nullptr);
    r.provenance = prov;
    d.manifest.source_ids.push_back(r.id);
    ++d.manifest.counts[LabelCode(level)];
    d.records.push_back(std::move(r));
  };
  for (std::size_t i : informal_idx) {
    emit(informal_pool[i], Direction::kInformalToFormal, FormalityLabel::kInformal, "informal");
  }
  for (std::size_t i : formal_idx) {
    emit(*formal[i], Direction::kFormalToInformal, FormalityLabel::kFormal, "formal");
  }
  ordered_json config;
  config["per_side"] = options.per_side;
  config["score_filter"] = options.score_filter;
  config["seed"] = options.seed;
  config["informal_pool_size"] = informal_pool.size();
  config["formal_pool_size"] = formal_pool.size();
  config["formal_after_filter"] = formal.size();
  Finish(d.manifest, config);
  return d;
}

std::vector<AuditViolation> AuditRecords(const std::vector<DatasetRecord>& records,
                                         const LexiconSet& lexicons) {
  std::vector<AuditViolation> out;
  for (const auto& r : records) {
    const FormalityLabel actual = Classify(r.text, lexicons).label;
    if (actual != r.level) out.push_back({r.id, r.level, actual, r.text});
  }
  return out;
}

std::vector<std::string> AuditTripleTexts(const std::vector<DatasetRecord>& records) {
  std::map<std::string, std::set<std::string>> seen;
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (!r.triple_id) continue;
    if (!seen[*r.triple_id].insert(r.text).second) {
      out.push_back(fmt::format("triple {} repeats '{}'", *r.triple_id, r.text));
    }
  }
  return out;
}

}  // namespace formality
