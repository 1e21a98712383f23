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

// Command-line driver for every stage of the toolkit.
//
// Exit codes: 0 success, 1 usage, 2 data, 3 gateway.

#include <atomic>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "formality/classifier.h"
#include "formality/corpus_metrics.h"
#include "formality/error.h"
#include "formality/llm_gateway.h"
#include "formality/parallel.h"
#include "formality/pipeline.h"
#include "formality/records.h"
#include "formality/review.h"
#include "formality/review_server.h"
#include "formality/transfer_eval.h"

namespace formality {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitGateway = 3;

struct Common {
  std::string lexicons;
  std::string out;
  int jobs = 1;
  std::uint64_t seed = 0;
};

std::shared_ptr<const LexiconSet> LoadLexicons(const Common& c) {
  return std::make_shared<const LexiconSet>(
      LexiconSet::Load(c.lexicons.empty() ? DefaultLexiconDirectory()
                                          : std::filesystem::path(c.lexicons)));
}

void Emit(const Common& c, const ordered_json& machine, const std::string& human) {
  if (!c.out.empty()) {
    WriteText(c.out, machine.dump(2) + "\n");
  } else {
    std::cout << human;
  }
}

ordered_json EvidenceJson(const std::vector<FeatureEvidence>& evidence) {
  ordered_json out = ordered_json::array();
  for (const auto& e : evidence) {
    out.push_back({{"kind", FeatureName(e.kind)},
                   {"tier", TierName(TierOf(e.kind))},
                   {"start", e.span.start},
                   {"end", e.span.end},
                   {"matched", e.matched}});
  }
  return out;
}

std::vector<std::string> Inputs(const std::string& text, const std::string& input) {
  if (!text.empty() && !input.empty()) throw UsageError("give --text or --input, not both");
  if (!text.empty()) return {text};
  if (!input.empty()) return ReadSentences(input);
  throw UsageError("one of --text or --input is required");
}

// Gateway over the stub file when given, the HTTP service otherwise.
std::shared_ptr<Gateway> MakeGateway(const std::string& config_path, const std::string& stub,
                                     const std::string& call_log,
                                     std::shared_ptr<const LexiconSet> lexicons) {
  GatewayConfig config =
      config_path.empty() ? GatewayConfig{} : GatewayConfig::Load(config_path);
  std::shared_ptr<ChatTransport> transport;
  Sleeper sleeper;
  if (!stub.empty()) {
    transport = StubTransport::Load(stub, std::move(lexicons));
    sleeper = [](std::chrono::milliseconds) {};
  } else {
    transport = std::make_shared<HttpChatTransport>(config);
  }
  auto gateway = std::make_shared<Gateway>(config, transport, sleeper);
  if (!call_log.empty()) gateway->SetCallLog(call_log);
  return gateway;
}

// ---- classify ---------------------------------------------------------

struct ClassifyArgs {
  std::string text;
  std::string input;
};

int RunClassify(const Common& c, const ClassifyArgs& a) {
  const auto lexicons = LoadLexicons(c);
  ordered_json results = ordered_json::array();
  std::string human;
  for (const std::string& sentence : Inputs(a.text, a.input)) {
    const LabeledSentence l = Classify(sentence, *lexicons);
    human += fmt::format("{} ({})\t{}\n", LabelCode(l.label), LabelName(l.label), sentence);
    for (const auto& e : l.evidence) {
      human += fmt::format("  {:<22}{:<10}[{},{})  {}\n", FeatureName(e.kind),
                           TierName(TierOf(e.kind)), e.span.start, e.span.end, e.matched);
    }
    results.push_back({{"text", sentence},
                       {"label", LabelCode(l.label)},
                       {"label_name", LabelName(l.label)},
                       {"fscore", l.fscore ? ordered_json(*l.fscore) : ordered_json(nullptr)},
                       {"evidence", EvidenceJson(l.evidence)}});
  }
  Emit(c, results, human);
  return 0;
}

// ---- fscore -----------------------------------------------------------

int RunFscore(const Common& c, const ClassifyArgs& a) {
  const auto lexicons = LoadLexicons(c);
  ordered_json results = ordered_json::array();
  std::string human;
  double sum = 0.0;
  std::size_t defined = 0;
  for (const std::string& sentence : Inputs(a.text, a.input)) {
    std::optional<double> f;
    try {
      f = HdFormalityScore(Analyze(sentence, *lexicons));
      sum += *f;
      ++defined;
    } catch (const UndefinedStatistic&) {
    }
    human += fmt::format("{}\t{}\n", f ? fmt::format("{:.2f}", *f) : "undefined", sentence);
    results.push_back({{"text", sentence}, {"fscore", f ? ordered_json(*f) : ordered_json(nullptr)}});
  }
  if (defined > 0) human += fmt::format("mean\t{:.2f} (n={})\n", sum / defined, defined);
  Emit(c, {{"sentences", results},
           {"mean", defined ? ordered_json(sum / defined) : ordered_json(nullptr)}},
       human);
  return 0;
}

// ---- audit ------------------------------------------------------------

struct AuditArgs {
  std::string input;
  bool strict = false;
};

int RunAudit(const Common& c, const AuditArgs& a) {
  const auto lexicons = LoadLexicons(c);
  const std::vector<std::string> corpus = ReadSentences(a.input);
  const CorpusLabelCounts counts = ClassifyCorpus(corpus, *lexicons);
  ordered_json machine;
  std::string human = fmt::format("sentences: {}\n", counts.total);
  for (FormalityLabel l : kAllLabels) {
    human += fmt::format("{} ({:<8})  {:>8}  {:.4f}\n", LabelCode(l), LabelName(l),
                         counts.count(l), counts.proportion(l));
    machine["counts"][std::string(LabelName(l))] = counts.count(l);
    machine["proportions"][std::string(LabelName(l))] = counts.proportion(l);
  }
  machine["total"] = counts.total;
  std::size_t violations = 0;
  if (std::filesystem::path(a.input).extension() == ".jsonl") {
    const auto records = ReadRecords(a.input);
    const auto level = AuditRecords(records, *lexicons);
    const auto repeats = AuditTripleTexts(records);
    violations = level.size() + repeats.size();
    ordered_json list = ordered_json::array();
    for (const auto& v : level) {
      human += fmt::format("violation {}: stored {} classified {}\n", v.id, LabelCode(v.expected),
                           LabelCode(v.actual));
      list.push_back({{"id", v.id},
                      {"stored", LabelCode(v.expected)},
                      {"classified", LabelCode(v.actual)}});
    }
    for (const auto& r : repeats) {
      human += "violation " + r + "\n";
      list.push_back({{"repeat", r}});
    }
    human += fmt::format("level violations: {}\n", violations);
    machine["violations"] = list;
  }
  Emit(c, machine, human);
  return a.strict && violations > 0 ? kExitData : 0;
}

// ---- overlap ----------------------------------------------------------

struct OverlapArgs {
  std::string train;
  std::string test;
  std::string n = "1..5";
  bool keep_case = false;
  bool no_punctuation = false;
};

std::pair<int, int> ParseRange(const std::string& spec) {
  try {
    const auto dots = spec.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int n = std::stoi(spec, &used);
      if (used != spec.size()) throw std::invalid_argument(spec);
      return {n, n};
    }
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2));
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(fmt::format("bad n-gram range '{}'", spec));
  }
}

int RunOverlap(const Common& c, const OverlapArgs& a) {
  const auto [lo, hi] = ParseRange(a.n);
  if (lo < 1 || hi < lo) throw UsageError(fmt::format("bad n-gram range '{}'", a.n));
  const auto train = ReadSentences(a.train);
  const auto test = ReadSentences(a.test);
  NgramOptions options;
  options.lowercase = !a.keep_case;
  options.include_punctuation = !a.no_punctuation;
  options.jobs = c.jobs;
  ordered_json machine = {{"train", a.train}, {"test", a.test},
                          {"lowercase", options.lowercase},
                          {"include_punctuation", options.include_punctuation}};
  std::string header;
  std::string row;
  for (int n = lo; n <= hi; ++n) {
    const NgramOverlap r = ComputeNgramOverlap(train, test, n, options);
    header += fmt::format("{:>9}", fmt::format("{}-gram", n));
    row += fmt::format("{:>9.3f}", r.ratio);
    machine["ratios"].push_back({{"n", n},
                                 {"ratio", r.ratio},
                                 {"shared", r.shared},
                                 {"test_ngrams", r.test_ngrams},
                                 {"warning", r.empty_test_warning}});
    if (r.empty_test_warning) {
      std::cerr << fmt::format("warning: test corpus yields no {}-grams\n", n);
    }
  }
  Emit(c, machine, header + "\n" + row + "\n");
  return 0;
}

// ---- stats ------------------------------------------------------------

struct StatsArgs {
  std::string input;
  std::optional<int> level;
};

int RunStats(const Common& c, const StatsArgs& a) {
  std::vector<LevelText> corpus;
  if (std::filesystem::path(a.input).extension() == ".jsonl") {
    for (auto& r : ReadRecords(a.input)) corpus.push_back({r.level, std::move(r.text)});
  } else {
    if (!a.level) throw UsageError("plain-text input needs --level");
    const auto level = LabelFromInt(*a.level);
    if (!level) throw UsageError("--level must be 0, 1 or 2");
    for (auto& s : ReadLines(a.input)) corpus.push_back({*level, std::move(s)});
  }
  const CorpusStats stats = SentenceStats(corpus);
  std::string human = fmt::format("{:<10}{:>8}{:>12}{:>12}\n", "level", "count", "mean chars",
                                  "mean words");
  ordered_json machine;
  for (FormalityLabel l : {FormalityLabel::kFormal, FormalityLabel::kCasual,
                           FormalityLabel::kInformal}) {
    const LevelStats& s = stats.of(l);
    human += fmt::format("{:<10}{:>8}{:>12.2f}{:>12.2f}\n", LabelName(l), s.count, s.mean_chars,
                         s.mean_words);
    machine[std::string(LabelName(l))] = {
        {"count", s.count}, {"mean_chars", s.mean_chars}, {"mean_words", s.mean_words}};
  }
  Emit(c, machine, human);
  return 0;
}

// ---- kappa ------------------------------------------------------------

struct KappaArgs {
  std::string input;
  std::vector<std::string> categories;
};

int RunKappa(const Common& c, const KappaArgs& a) {
  std::vector<std::vector<std::string>> ratings;
  std::set<std::string> seen;
  for (const std::string& line : ReadLines(a.input)) {
    std::vector<std::string> row;
    std::string cell;
    for (char ch : line + ",") {
      if (ch == ',' || ch == '\t' || ch == ' ') {
        if (!cell.empty()) row.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    for (const auto& r : row) seen.insert(r);
    ratings.push_back(std::move(row));
  }
  std::vector<std::string> categories = a.categories;
  if (categories.empty()) categories.assign(seen.begin(), seen.end());
  ordered_json machine = {{"items", ratings.size()}, {"categories", categories}};
  try {
    const double kappa = FleissKappa(ratings, categories);
    machine["kappa"] = kappa;
    Emit(c, machine, fmt::format("items: {}\nkappa: {:.4f}\n", ratings.size(), kappa));
  } catch (const UndefinedStatistic& e) {
    machine["kappa"] = nullptr;
    machine["note"] = e.what();
    Emit(c, machine, fmt::format("items: {}\nkappa: undefined ({})\n", ratings.size(), e.what()));
  }
  return 0;
}

// ---- build-3lf / build-naive ------------------------------------------

struct BuildArgs {
  std::string corpus;
  std::string gateway_config;
  std::string stub;
  std::string call_log;
  std::string judge = "rule";
  int max_revisions = 3;
  std::optional<std::size_t> quota;
  bool accept_validated = false;
};

ordered_json RunConfigJson(const Common& c, const BuildArgs& a, const Gateway& gateway) {
  ordered_json config;
  config["corpus"] = std::filesystem::path(a.corpus).filename().string();
  config["judge"] = a.judge;
  config["max_revisions"] = a.max_revisions;
  config["seed"] = c.seed;
  config["gateway"] = {{"model", gateway.config().model},
                       {"temperature", gateway.config().temperature},
                       {"mode", a.stub.empty() ? "http" : "stub"}};
  return config;
}

void WriteDataset(const std::filesystem::path& dir, const Dataset& d) {
  WriteRecords(dir / "dataset.jsonl", d.records);
  WriteText(dir / "manifest.json", ManifestToJson(d.manifest).dump(2) + "\n");
}

int RunBuild3lf(const Common& c, const BuildArgs& a) {
  if (c.out.empty()) throw UsageError("--out directory is required");
  const auto lexicons = LoadLexicons(c);
  auto gateway = MakeGateway(a.gateway_config, a.stub, a.call_log, lexicons);
  std::unique_ptr<LabelJudge> judge;
  if (a.judge == "rule") {
    judge = std::make_unique<RuleLabelJudge>(lexicons);
  } else if (a.judge == "llm-3way") {
    judge = std::make_unique<LlmLabelJudge>(gateway);
  } else {
    throw UsageError(fmt::format("--judge must be rule or llm-3way, got '{}'", a.judge));
  }
  const auto corpus = ReadSentences(a.corpus);
  const AnchorExtraction anchors = ExtractCasualAnchors(corpus, *judge, c.jobs);
  BuildOptions options;
  options.max_revisions = a.max_revisions;
  options.source = std::filesystem::path(a.corpus).filename().string();
  const auto triples = BuildTriples(anchors.anchors, *gateway, *lexicons, options, c.jobs);

  std::filesystem::create_directories(c.out);
  const std::filesystem::path dir(c.out);
  WriteTriples(dir / "triples.jsonl", triples);
  std::size_t validated = 0;
  for (const auto& t : triples) validated += t.status == TripleStatus::kValidated ? 1 : 0;

  AssemblyOptions assembly;
  assembly.accept_validated = a.accept_validated;
  std::size_t eligible = 0;
  for (const auto& t : triples) {
    eligible += (t.status == TripleStatus::kAccepted ||
                 (a.accept_validated && t.status == TripleStatus::kValidated))
                    ? 1
                    : 0;
  }
  assembly.quota = a.quota.value_or(eligible);
  assembly.config = RunConfigJson(c, a, *gateway);
  const Dataset dataset = AssembleDataset(triples, assembly);
  WriteDataset(dir, dataset);

  std::cout << fmt::format(
      "corpus: {} sentences; judged informal {}, casual {}, formal {}, failed {}\n", corpus.size(),
      anchors.tally[0], anchors.tally[1], anchors.tally[2], anchors.failed);
  std::cout << fmt::format("triples: {} built, {} validated, {} draft\n", triples.size(),
                           validated, triples.size() - validated);
  std::cout << fmt::format("dataset: {} records ({} per level), digest {}\n",
                           dataset.records.size(), assembly.quota,
                           dataset.manifest.config_digest);
  return 0;
}

int RunBuildNaive(const Common& c, const BuildArgs& a) {
  if (c.out.empty()) throw UsageError("--out directory is required");
  const auto lexicons = LoadLexicons(c);
  auto gateway = MakeGateway(a.gateway_config, a.stub, a.call_log, lexicons);
  const auto corpus = ReadSentences(a.corpus);
  std::vector<std::string> informal;
  for (const auto& s : corpus) {
    if (Classify(s, *lexicons).label == FormalityLabel::kInformal) informal.push_back(s);
  }
  std::vector<std::optional<NaivePair>> built(informal.size());
  std::atomic<std::size_t> failed{0};
  ParallelFor(informal.size(), c.jobs, [&](std::size_t i) {
    try {
      built[i] = BuildNaivePair(fmt::format("n{:06d}", i + 1), informal[i], *gateway, *lexicons);
    } catch (const GatewayError&) {
      ++failed;
    }
  });
  std::vector<NaivePair> pairs;
  std::string lines;
  for (auto& p : built) {
    if (!p) continue;
    lines += ordered_json({{"id", p->id},
                           {"informal", p->informal},
                           {"formal", p->formal},
                           {"status", TripleStatusName(p->status)}})
                 .dump() +
             "\n";
    pairs.push_back(std::move(*p));
  }
  std::filesystem::create_directories(c.out);
  const std::filesystem::path dir(c.out);
  WriteText(dir / "pairs.jsonl", lines);
  std::size_t validated = 0;
  for (const auto& p : pairs) validated += p.status == TripleStatus::kValidated ? 1 : 0;
  AssemblyOptions assembly;
  assembly.accept_validated = a.accept_validated;
  assembly.quota = a.quota.value_or(a.accept_validated ? validated : 0);
  assembly.config = RunConfigJson(c, a, *gateway);
  const Dataset dataset = AssembleNaiveDataset(pairs, assembly);
  WriteDataset(dir, dataset);
  std::cout << fmt::format("informal inputs: {} of {}; pairs {} validated, {} draft, {} failed\n",
                           informal.size(), corpus.size(), validated, pairs.size() - validated,
                           failed.load());
  std::cout << fmt::format("dataset: {} records, digest {}\n", dataset.records.size(),
                           dataset.manifest.config_digest);
  return 0;
}

// ---- build-test -------------------------------------------------------

struct TestArgs {
  std::string informal;
  std::string formal;
  std::size_t count = 200;
  bool no_filter = false;
};

int RunBuildTest(const Common& c, const TestArgs& a) {
  if (c.out.empty()) throw UsageError("--out file is required");
  TestSetOptions options;
  options.per_side = a.count;
  options.score_filter = !a.no_filter;
  options.seed = c.seed;
  const Dataset d = AssembleTestSet(ReadPool(a.informal), ReadPool(a.formal), options);
  WriteRecords(c.out, d.records);
  WriteText(c.out + ".manifest.json", ManifestToJson(d.manifest).dump(2) + "\n");
  std::cout << fmt::format("test split: {} records (I->F {}, F->I {}), seed {}\n",
                           d.records.size(), d.manifest.counts[0], d.manifest.counts[2], c.seed);
  return 0;
}

// ---- evaluate ---------------------------------------------------------

struct EvalArgs {
  std::string records;
  std::string judge = "rule";
  bool fluency = false;
  std::string meaning;
  std::string gateway_config;
  std::string stub;
  std::string call_log;
};

int RunEvaluate(const Common& c, const EvalArgs& a) {
  const auto lexicons = LoadLexicons(c);
  std::shared_ptr<Gateway> gateway;
  auto need_gateway = [&] {
    if (!gateway) gateway = MakeGateway(a.gateway_config, a.stub, a.call_log, lexicons);
    return gateway;
  };
  std::unique_ptr<FormalityJudge> judge;
  if (a.judge == "rule") {
    judge = std::make_unique<RuleJudge>(lexicons);
  } else if (a.judge == "llm-binary") {
    judge = std::make_unique<LlmBinaryJudge>(need_gateway());
  } else if (a.judge == "llm-3way") {
    judge = std::make_unique<Llm3WayJudge>(need_gateway());
  } else {
    throw UsageError(fmt::format("--judge must be rule, llm-binary or llm-3way, got '{}'",
                                 a.judge));
  }
  std::vector<EvalRecord> records;
  for (const auto& r : ReadRecords(a.records)) records.push_back(EvalRecordFromDataset(r));
  JudgedRecords judged = JudgeRecords(std::move(records), *judge, c.jobs);
  EvalReport report = DirectionalMetrics(judged.records);
  report.judge = judge->name();
  report.skipped = judged.skipped.size();
  if (a.fluency) {
    LlmFluencyJudge fluency(need_gateway());
    const FluencyResult f = FluencySummary(judged.records, fluency, c.jobs);
    report.mean_fluency = f.mean;
    report.fluency_scored = f.scored;
    report.fluency_skipped = f.skipped;
  }
  if (!a.meaning.empty()) {
    std::vector<std::vector<bool>> votes;
    for (const std::string& line : ReadLines(a.meaning)) {
      try {
        const json j = json::parse(line);
        std::vector<bool> v;
        for (const json& b : j.value("votes", json::array())) v.push_back(b.get<bool>());
        votes.push_back(std::move(v));
      } catch (const json::exception& e) {
        throw DataError(fmt::format("{}: {}", a.meaning, e.what()));
      }
    }
    const MeaningResult m = MeaningPreservationRate(votes);
    report.meaning_rate = m.rate;
    report.meaning_total = m.total;
    report.meaning_excluded = m.excluded;
  }
  ordered_json machine = ReportToJson(report);
  ordered_json skipped = ordered_json::array();
  for (const auto& s : judged.skipped) skipped.push_back({{"id", s.id}, {"reason", s.reason}});
  machine["skipped_records"] = skipped;
  machine["seed"] = c.seed;
  if (!c.out.empty()) WriteText(c.out, machine.dump(2) + "\n");
  std::cout << FormatReport(report);
  return 0;
}

// ---- serve ------------------------------------------------------------

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log = "review_events.jsonl";
  std::string snapshot;
  std::size_t per_item = 3;
  std::string enqueue;
  std::vector<std::string> annotators;
};

ReviewServer* g_server = nullptr;

int RunServe(const Common& c, const ServeArgs& a) {
  const auto lexicons = LoadLexicons(c);
  ReviewConfig config;
  config.annotators_per_item = a.per_item;
  auto store = std::make_shared<ReviewStore>(lexicons, config, a.log, a.snapshot);
  for (const auto& id : a.annotators) store->RegisterAnnotator(id);
  if (!a.enqueue.empty()) store->Enqueue(ReadTriples(a.enqueue));
  ReviewServer server(store);
  const int port = server.Bind(a.host, a.port);
  std::cout << fmt::format("review service on http://{}:{} ({} items)\n", a.host, port,
                           store->size())
            << std::flush;
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->Stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->Stop();
  });
  server.Listen();
  g_server = nullptr;
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Formality spectrum toolkit"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool seed) {
    sub->add_option("--lexicons", common.lexicons,
                    "Lexicon directory (default: $FORMALITY_LEXICONS or the bundled set)");
    sub->add_option("--out", common.out, "Machine-readable output path");
    sub->add_option("--jobs", common.jobs, "Worker count")->check(CLI::PositiveNumber);
    if (seed) sub->add_option("--seed", common.seed, "Seed, recorded in manifests");
  };

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Label sentences 0/1/2 with evidence");
  classify->add_option("--text", classify_args.text, "Sentence to classify");
  classify->add_option("--input", classify_args.input, "File of sentences (.txt or .jsonl)");
  add_common(classify, false);

  ClassifyArgs fscore_args;
  auto* fscore = app.add_subcommand("fscore", "Deictic/non-deictic formality score");
  fscore->add_option("--text", fscore_args.text, "Sentence to score");
  fscore->add_option("--input", fscore_args.input, "File of sentences (.txt or .jsonl)");
  add_common(fscore, false);

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "Label distribution of a corpus; level check for records");
  audit->add_option("--input", audit_args.input, "Corpus (.txt or .jsonl)")->required();
  audit->add_flag("--strict", audit_args.strict, "Exit 2 when stored levels disagree");
  add_common(audit, false);

  OverlapArgs overlap_args;
  auto* overlap = app.add_subcommand("overlap", "N-gram overlap of a test set against a train set");
  overlap->add_option("--train", overlap_args.train, "Train corpus")->required();
  overlap->add_option("--test", overlap_args.test, "Test corpus")->required();
  overlap->add_option("--n", overlap_args.n, "Order or range, e.g. 3 or 1..5")
      ->default_val("1..5");
  overlap->add_flag("--keep-case", overlap_args.keep_case, "Do not lowercase tokens");
  overlap->add_flag("--no-punctuation", overlap_args.no_punctuation,
                    "Drop punctuation tokens before forming n-grams");
  add_common(overlap, false);

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Per-level sentence length statistics");
  stats->add_option("--input", stats_args.input, "Records (.jsonl) or plain text")->required();
  stats->add_option("--level", stats_args.level, "Level for plain-text input (0/1/2)");
  add_common(stats, false);

  KappaArgs kappa_args;
  auto* kappa = app.add_subcommand("kappa", "Fleiss' kappa over an item x annotator label file");
  kappa->add_option("--input", kappa_args.input, "One item per line, labels comma/space separated")
      ->required();
  kappa->add_option("--categories", kappa_args.categories,
                    "Category set (default: labels seen in the file)")
      ->delimiter(',');
  add_common(kappa, false);

  auto add_gateway = [](CLI::App* sub, std::string& config, std::string& stub,
                        std::string& log) {
    sub->add_option("--gateway-config", config, "Gateway JSON config");
    sub->add_option("--stub", stub, "Stub response file; no network access");
    sub->add_option("--call-log", log, "Append gateway calls as JSON lines");
  };

  BuildArgs build_args;
  auto* build = app.add_subcommand("build-3lf", "Casual-anchored triple construction");
  build->add_option("--corpus", build_args.corpus, "Source corpus")->required();
  build->add_option("--judge", build_args.judge, "Anchor judge: rule or llm-3way")
      ->default_val("rule");
  build->add_option("--max-revisions", build_args.max_revisions, "Revision cap per variant")
      ->default_val(3)
      ->check(CLI::NonNegativeNumber);
  build->add_option("--quota", build_args.quota, "Triples per level (default: all eligible)");
  build->add_flag("--accept-validated", build_args.accept_validated,
                  "Treat classifier-validated triples as accepted");
  add_gateway(build, build_args.gateway_config, build_args.stub, build_args.call_log);
  add_common(build, true);

  BuildArgs naive_args;
  auto* naive = app.add_subcommand("build-naive", "Direct informal-to-formal baseline pairs");
  naive->add_option("--corpus", naive_args.corpus, "Source corpus")->required();
  naive->add_option("--quota", naive_args.quota, "Pairs to keep (default: all eligible)");
  naive->add_flag("--accept-validated", naive_args.accept_validated,
                  "Treat classifier-validated pairs as accepted");
  add_gateway(naive, naive_args.gateway_config, naive_args.stub, naive_args.call_log);
  add_common(naive, true);

  TestArgs test_args;
  auto* test = app.add_subcommand("build-test", "Seeded bidirectional test split");
  test->add_option("--informal", test_args.informal, "Informal pool")->required();
  test->add_option("--formal", test_args.formal, "Formal pool (.jsonl with scores)")->required();
  test->add_option("--count", test_args.count, "Records per side")->default_val(200);
  test->add_flag("--no-score-filter", test_args.no_filter,
                 "Keep formal items without a positive score");
  add_common(test, true);

  EvalArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Directional precision/recall/F1 report");
  evaluate->add_option("--records", eval_args.records, "Generated records (.jsonl)")->required();
  evaluate->add_option("--judge", eval_args.judge, "rule, llm-binary or llm-3way")
      ->default_val("rule");
  evaluate->add_flag("--fluency", eval_args.fluency, "Score fluency of correct records");
  evaluate->add_option("--meaning", eval_args.meaning,
                       "Meaning votes, one JSON line {id, votes:[bool x3]} per record");
  add_gateway(evaluate, eval_args.gateway_config, eval_args.stub, eval_args.call_log);
  add_common(evaluate, true);

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run the review service");
  serve->add_option("--host", serve_args.host, "Bind address")->default_val("127.0.0.1");
  serve->add_option("--port", serve_args.port, "Port (0 picks a free one)")->default_val(8080);
  serve->add_option("--log", serve_args.log, "Event log path")
      ->default_val("review_events.jsonl");
  serve->add_option("--snapshot", serve_args.snapshot, "Snapshot path");
  serve->add_option("--annotators-per-item", serve_args.per_item, "Decisions per item")
      ->default_val(3);
  serve->add_option("--enqueue", serve_args.enqueue, "Triples file to enqueue at start");
  serve->add_option("--annotator", serve_args.annotators, "Register an annotator (repeatable)");
  add_common(serve, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*classify) return RunClassify(common, classify_args);
    if (*fscore) return RunFscore(common, fscore_args);
    if (*audit) return RunAudit(common, audit_args);
    if (*overlap) return RunOverlap(common, overlap_args);
    if (*stats) return RunStats(common, stats_args);
    if (*kappa) return RunKappa(common, kappa_args);
    if (*build) return RunBuild3lf(common, build_args);
    if (*naive) return RunBuildNaive(common, naive_args);
    if (*test) return RunBuildTest(common, test_args);
    if (*evaluate) return RunEvaluate(common, eval_args);
    if (*serve) return RunServe(common, serve_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GatewayError& e) {
    std::cerr << "gateway error: " << e.what() << "\n";
    return kExitGateway;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace formality

int main(int argc, char** argv) { return formality::Main(argc, argv); }
