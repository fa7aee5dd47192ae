#include "stancelp/pipeline.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "stancelp/io.hpp"
#include "stancelp/market.hpp"
#include "stancelp/report.hpp"
#include "stancelp/stance.hpp"

namespace stancelp {

namespace fs = std::filesystem;
using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace {

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "manifest", "labels",   "lexicon", "market_csv",     "controls_csv", "out_dir",
      "ticker",   "kind",     "granularity", "scenario",   "section",      "speaker_filter",
      "zero_fill", "horizons", "reps",   "alpha",          "seed",         "threads"};
  return keys;
}

fs::path Resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

RunConfig RunConfig::FromJson(std::string_view json_text, const fs::path& base_dir) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("config is not valid JSON: ") + e.what(),
                {"config"});
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object", {"config"});
  }

  RunConfig config;
  std::vector<std::string> bad;
  std::vector<std::string> why;
  auto reject = [&](const std::string& key, const std::string& reason) {
    bad.push_back(key);
    why.push_back(key + ": " + reason);
  };
  for (const auto& [key, value] : doc.items()) {
    if (!KnownKeys().count(key)) reject(key, "unknown field");
  }
  auto str = [&](const char* key, auto&& apply) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return;
    if (!it->is_string()) {
      reject(key, "must be a string");
      return;
    }
    apply(it->template get<std::string>());
  };
  auto path = [&](const char* key, auto&& apply) {
    str(key, [&](const std::string& v) {
      if (v.empty()) {
        reject(key, "must be a non-empty path");
      } else {
        apply(Resolve(base_dir, v));
      }
    });
  };

  path("manifest", [&](fs::path p) { config.manifest = std::move(p); });
  path("labels", [&](fs::path p) { config.labels = std::move(p); });
  path("lexicon", [&](fs::path p) { config.lexicon = std::move(p); });
  path("market_csv", [&](fs::path p) { config.market_csv = std::move(p); });
  path("controls_csv", [&](fs::path p) { config.controls_csv = std::move(p); });
  config.out_dir = Resolve(base_dir, "out");
  path("out_dir", [&](fs::path p) { config.out_dir = std::move(p); });
  str("ticker", [&](const std::string& v) { config.ticker = v; });
  str("kind", [&](const std::string& v) {
    if (!ParseIndicatorKind(v, &config.kind)) reject("kind", "expected sentiment or voice_tone");
  });
  str("granularity", [&](const std::string& v) {
    if (!ParseGranularity(v, &config.granularity)) reject("granularity", "expected fine or coarse");
  });
  str("scenario", [&](const std::string& v) {
    Scenario s;
    if (v == "all") {
      config.scenario.reset();
    } else if (ParseScenario(v, &s)) {
      config.scenario = s;
    } else {
      reject("scenario", "expected all, press_conference or hearing");
    }
  });
  str("section", [&](const std::string& v) {
    Section s;
    if (v == "all") {
      config.section.reset();
    } else if (ParseSection(v, &s)) {
      config.section = s;
    } else {
      reject("section", "expected all, opening_remarks, qanda or readout");
    }
  });
  str("speaker_filter", [&](const std::string& v) { config.speaker_filter = v; });

  if (auto it = doc.find("zero_fill"); it != doc.end() && !it->is_null()) {
    if (it->is_boolean()) {
      config.zero_fill = it->get<bool>();
    } else {
      reject("zero_fill", "must be a boolean");
    }
  }
  auto integer = [&](const char* key, long long min, long long max, auto&& apply) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return;
    if (!it->is_number_integer()) {
      reject(key, "must be an integer");
      return;
    }
    const long long v = it->template get<long long>();
    if (v < min || v > max) {
      reject(key, "must be in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
      return;
    }
    apply(v);
  };
  integer("horizons", 0, 10000, [&](long long v) { config.horizons = static_cast<int>(v); });
  integer("reps", 100, 10000000, [&](long long v) { config.reps = static_cast<int>(v); });
  integer("threads", 0, 1024, [&](long long v) { config.threads = static_cast<unsigned>(v); });
  if (auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (it->is_number_unsigned()) {
      config.seed = it->get<std::uint64_t>();
    } else {
      reject("seed", "must be a non-negative integer");
    }
  }
  if (auto it = doc.find("alpha"); it != doc.end() && !it->is_null()) {
    if (!it->is_number()) {
      reject("alpha", "must be a number");
    } else {
      config.alpha = it->get<double>();
      if (!(config.alpha > 0.0 && config.alpha < 1.0)) reject("alpha", "must lie in (0, 1)");
    }
  }
  if (config.labels && config.lexicon) {
    reject("labels", "labels and lexicon are mutually exclusive");
    reject("lexicon", "labels and lexicon are mutually exclusive");
  }

  if (!bad.empty()) {
    std::string message = "invalid config:";
    for (const std::string& w : why) message += " " + w + ";";
    message.pop_back();
    throw Error(ErrorCode::kInvalidConfig, message, bad);
  }

  OrderedJson echo = doc;
  echo.erase("out_dir");
  config.echo_json = echo.dump();
  return config;
}

std::string RunConfig::ResolvedTicker() const {
  if (!ticker.empty()) return ticker;
  return market_csv.stem().string();
}

BootstrapConfig RunConfig::Bootstrap() const {
  return BootstrapConfig{reps, alpha, seed.value_or(0), threads};
}

AggregateOptions RunConfig::Aggregation() const {
  return AggregateOptions{zero_fill ? ZeroPolicy::kZeroFill : ZeroPolicy::kMissing, section,
                          speaker_filter};
}

namespace pipeline {

namespace {

struct Layout {
  fs::path root;

  fs::path sentences() const { return root / "stages" / "sentences.jsonl"; }
  fs::path events() const { return root / "stages" / "events.csv"; }
  fs::path labels() const { return root / "stages" / "labels.jsonl"; }
  fs::path outcomes() const { return root / "stages" / "outcomes.csv"; }
  fs::path event_controls() const { return root / "stages" / "event_controls.csv"; }
  fs::path summary(std::string_view stage) const {
    return root / "stages" / (std::string(stage) + ".summary.json");
  }
  fs::path indicators(IndicatorKind kind, Granularity g) const {
    return root / "indicators" /
           (std::string(ToString(kind)) + "_" + std::string(ToString(g)) + ".csv");
  }
  fs::path comparison(IndicatorKind kind) const {
    return root / "indicators" / (std::string(ToString(kind)) + "_fine_vs_coarse.csv");
  }
  fs::path irf_csv(const std::string& stem) const { return root / "irf" / (stem + ".csv"); }
  fs::path irf_json(const std::string& stem) const { return root / "irf" / (stem + ".json"); }
  fs::path figure(const std::string& stem) const { return root / "figures" / (stem + ".svg"); }
  fs::path run_summary() const { return root / "run_summary.json"; }
};

void WriteSummary(const Layout& layout, std::string_view stage, const Warnings& warnings,
                  OrderedJson counts) {
  OrderedJson doc;
  doc["stage"] = stage;
  doc["counts"] = std::move(counts);
  OrderedJson list = OrderedJson::array();
  for (const Warning& w : warnings) list.push_back({{"code", w.code}, {"message", w.message}});
  doc["warnings"] = std::move(list);
  io::WriteFile(layout.summary(stage), doc.dump(2) + "\n");
}

corpus::Corpus ReadCorpus(const Layout& layout) {
  corpus::Corpus c;
  c.events = ParseEvents(io::ReadFile(layout.events()));
  c.sentences = ParseSentences(io::ReadFile(layout.sentences()));
  return c;
}

std::vector<EventRef> EventRefs(const std::vector<corpus::EventInfo>& events) {
  std::vector<EventRef> refs;
  for (const auto& e : events) refs.push_back(EventRef{e.event_id, e.event_date});
  return refs;
}

std::string Segment(const RunConfig& config, const Layout& layout) {
  const corpus::Corpus c = corpus::BuildCorpus(corpus::LoadManifest(config.manifest));
  io::WriteFile(layout.sentences(), SerializeSentences(c.sentences));
  io::WriteFile(layout.events(), SerializeEvents(c.events));
  WriteSummary(layout, "segment", {},
               {{"events", c.events.size()}, {"sentences", c.sentences.size()}});
  return "segment: " + std::to_string(c.events.size()) + " events, " +
         std::to_string(c.sentences.size()) + " sentences";
}

std::string Label(const RunConfig& config, const Layout& layout) {
  const corpus::Corpus c = ReadCorpus(layout);
  Warnings warnings;
  std::vector<LabelRecord> records;
  std::string source;
  if (config.labels) {
    records = stance::ToRecords(stance::LoadLabels(*config.labels, c, &warnings));
    source = "labels";
  } else {
    const Lexicon lexicon =
        config.lexicon ? Lexicon::FromJson(io::ReadFile(*config.lexicon)) : Lexicon::Default();
    records = stance::LabelWithLexicon(c, lexicon);
    source = config.lexicon ? "lexicon" : "default_lexicon";
  }
  io::WriteFile(layout.labels(), stance::SerializeLabels(records));
  WriteSummary(layout, "label", warnings, {{"source", source}, {"labeled", records.size()}});
  return "label: " + std::to_string(records.size()) + " labeled sentences (" + source + ")";
}

std::string Aggregate(const RunConfig& config, const Layout& layout) {
  const corpus::Corpus c = ReadCorpus(layout);
  Warnings warnings;
  const std::vector<LabeledEvent> events = stance::JoinLabels(
      stance::ParseLabelFile(io::ReadFile(layout.labels())), c, &warnings);
  const AggregateOptions options = config.Aggregation();
  Warnings fine_warnings;
  const auto fine = indicator::IndicatorSeries(events, Granularity::kFine, config.kind,
                                               config.scenario, options, &fine_warnings);
  const auto coarse = indicator::IndicatorSeries(events, Granularity::kCoarse, config.kind,
                                                 config.scenario, options, nullptr);
  warnings.insert(warnings.end(), fine_warnings.begin(), fine_warnings.end());
  auto missing = [](const std::vector<IndicatorPoint>& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](const IndicatorPoint& p) { return !p.score; }));
  };
  io::WriteFile(layout.indicators(config.kind, Granularity::kFine),
                indicator::SerializeIndicatorCsv(fine));
  io::WriteFile(layout.indicators(config.kind, Granularity::kCoarse),
                indicator::SerializeIndicatorCsv(coarse));
  io::WriteFile(layout.comparison(config.kind), report::EmitIndicatorComparison(fine, coarse));
  WriteSummary(layout, "aggregate", warnings,
               {{"kind", ToString(config.kind)},
                {"points", fine.size()},
                {"missing_fine", missing(fine)},
                {"missing_coarse", missing(coarse)}});
  return "aggregate: " + std::to_string(fine.size()) + " indicator points";
}

std::string Outcomes(const RunConfig& config, const Layout& layout) {
  const std::vector<corpus::EventInfo> events = ParseEvents(io::ReadFile(layout.events()));
  Warnings warnings;
  MarketSeries series = market::LoadMarketCsv(config.market_csv, &warnings);
  series.ticker = config.ResolvedTicker();
  const ControlSeries controls = market::LoadControlsCsv(config.controls_csv, &warnings);
  const auto refs = EventRefs(events);
  const OutcomePanel panel = market::BuildOutcomePanel(series, refs, config.horizons, &warnings);
  const auto joined = market::JoinControls(refs, controls, &warnings);
  io::WriteFile(layout.outcomes(), market::SerializeOutcomePanel(panel));
  io::WriteFile(layout.event_controls(), market::SerializeEventControls(joined));
  WriteSummary(layout, "outcomes", warnings,
               {{"ticker", series.ticker},
                {"events", events.size()},
                {"outcome_rows", panel.rows.size()},
                {"controls_matched", joined.size()},
                {"controls_dropped", events.size() - joined.size()}});
  return "outcomes: " + std::to_string(panel.rows.size()) + " outcome rows, " +
         std::to_string(joined.size()) + " events with controls";
}

std::string EstimateStage(const RunConfig& config, const Layout& layout) {
  const std::string ticker = config.ResolvedTicker();
  const auto indicators = indicator::ParseIndicatorCsv(
      io::ReadFile(layout.indicators(config.kind, config.granularity)));
  const OutcomePanel panel = market::ParseOutcomePanel(io::ReadFile(layout.outcomes()), ticker);
  const auto controls = market::ParseEventControls(io::ReadFile(layout.event_controls()));
  const LocalProjection lp =
      lp::Estimate(panel, indicators, controls, config.horizons, config.Bootstrap());
  const std::string stem = report::IrfStem(ticker, config.kind, config.granularity);
  const IrfTable table = report::MakeIrfTable(lp.results, ticker, config.kind, config.granularity);
  io::WriteFile(layout.irf_csv(stem), report::SerializeIrfCsv(table));
  io::WriteFile(layout.irf_json(stem),
                report::SerializeLocalProjection(lp, ticker, config.kind, config.granularity));
  Warnings warnings;
  for (const InfeasibleHorizon& h : lp.infeasible) {
    warnings.push_back({"InfeasibleHorizon", "h=" + std::to_string(h.horizon) + ": " + h.reason});
  }
  OrderedJson drops = OrderedJson::array();
  for (const LPResult& r : lp.results) {
    drops.push_back({{"horizon", r.horizon},
                     {"n", r.n},
                     {"missing_score", r.drops.missing_score},
                     {"missing_outcome", r.drops.missing_outcome},
                     {"missing_controls", r.drops.missing_controls}});
  }
  WriteSummary(layout, "estimate", warnings,
               {{"estimated_horizons", lp.results.size()},
                {"infeasible_horizons", lp.infeasible.size()},
                {"reps", config.reps},
                {"alpha", config.alpha},
                {"seed", config.seed.value_or(0)},
                {"drops", std::move(drops)}});
  return "estimate: " + std::to_string(lp.results.size()) + " horizons estimated";
}

std::string Plot(const RunConfig& config, const Layout& layout) {
  const std::string ticker = config.ResolvedTicker();
  const std::string stem = report::IrfStem(ticker, config.kind, config.granularity);
  const IrfTable table = report::ParseIrfCsv(io::ReadFile(layout.irf_csv(stem)), ticker,
                                             config.kind, config.granularity);
  io::WriteFile(layout.figure(stem), report::EmitIrfSvg(table));
  WriteSummary(layout, "plot", {}, {{"figures", 1}});

  OrderedJson summary;
  summary["status"] = "ok";
  summary["config"] = OrderedJson::parse(config.echo_json);
  summary["seed"] = config.seed.value_or(0);
  OrderedJson stages = OrderedJson::object();
  for (std::string_view stage : kStages) {
    const fs::path path = layout.summary(stage);
    if (!fs::exists(path)) continue;
    OrderedJson s = OrderedJson::parse(io::ReadFile(path));
    stages[std::string(stage)] = {{"counts", s["counts"]}, {"warnings", s["warnings"]}};
  }
  summary["stages"] = std::move(stages);
  io::WriteFile(layout.run_summary(), summary.dump(2) + "\n");
  return "plot: wrote " + layout.figure(stem).string();
}

}  // namespace

bool IsStage(std::string_view name) {
  return std::find(std::begin(kStages), std::end(kStages), name) != std::end(kStages);
}

void RequireFields(const RunConfig& config, std::string_view stage) {
  std::vector<std::string> missing;
  const bool all = stage == "run";
  if ((all || stage == "segment") && config.manifest.empty()) missing.push_back("manifest");
  if (all || stage == "outcomes") {
    if (config.market_csv.empty()) missing.push_back("market_csv");
    if (config.controls_csv.empty()) missing.push_back("controls_csv");
  }
  if ((all || stage == "estimate") && !config.seed) missing.push_back("seed");
  if ((stage == "estimate" || stage == "plot") && config.ticker.empty() &&
      config.market_csv.empty()) {
    missing.push_back("ticker");
  }
  if (!missing.empty()) {
    std::string message = "missing required config fields:";
    for (const std::string& m : missing) message += " " + m;
    throw Error(ErrorCode::kInvalidConfig, message, missing);
  }
}

std::string RunStage(const RunConfig& config, std::string_view stage) {
  if (stage != "run" && !IsStage(stage)) {
    throw Error(ErrorCode::kInvalidConfig, "unknown stage '" + std::string(stage) + "'", {"stage"});
  }
  RequireFields(config, stage);
  const Layout layout{config.out_dir};
  if (stage == "run") {
    std::error_code ec;
    fs::remove(layout.run_summary(), ec);
    std::string lines;
    for (std::string_view s : kStages) lines += RunStage(config, s) + "\n";
    lines.pop_back();
    return lines;
  }
  if (stage == "segment") return Segment(config, layout);
  if (stage == "label") return Label(config, layout);
  if (stage == "aggregate") return Aggregate(config, layout);
  if (stage == "outcomes") return Outcomes(config, layout);
  if (stage == "estimate") return EstimateStage(config, layout);
  return Plot(config, layout);
}

std::string SerializeSentences(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const Sentence& s : sentences) {
    OrderedJson line;
    line["event_id"] = s.event_id;
    line["sentence_index"] = s.sentence_index;
    line["turn_index"] = s.turn_index;
    line["section"] = ToString(s.section);
    line["speaker"] = s.speaker;
    line["text"] = s.text;
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<Sentence> ParseSentences(std::string_view text) {
  std::vector<Sentence> out;
  std::size_t line_no = 0;
  for (std::string_view line : io::SplitLines(text)) {
    ++line_no;
    if (io::Trim(line).empty()) continue;
    try {
      const Json j = Json::parse(line);
      Sentence s;
      s.event_id = j.at("event_id").get<std::string>();
      s.sentence_index = j.at("sentence_index").get<std::size_t>();
      s.turn_index = j.at("turn_index").get<std::size_t>();
      if (!ParseSection(j.at("section").get<std::string>(), &s.section)) {
        throw Error(ErrorCode::kParse, "unknown section");
      }
      s.speaker = j.at("speaker").get<std::string>();
      s.text = j.at("text").get<std::string>();
      out.push_back(std::move(s));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kParse,
                  "sentences line " + std::to_string(line_no) + ": " + e.what(),
                  {"line " + std::to_string(line_no)});
    }
  }
  return out;
}

std::string SerializeEvents(const std::vector<corpus::EventInfo>& events) {
  std::string out = "event_id,date,scenario,sentences\n";
  for (const auto& e : events) {
    out += io::CsvField(e.event_id) + ',' + e.event_date.ToString() + ',' +
           std::string(ToString(e.scenario)) + ',' + std::to_string(e.sentence_count) + '\n';
  }
  return out;
}

std::vector<corpus::EventInfo> ParseEvents(std::string_view text) {
  const std::vector<std::string_view> lines = io::SplitLines(text);
  if (lines.empty() || lines[0] != "event_id,date,scenario,sentences") {
    throw Error(ErrorCode::kParse, "events CSV: unexpected header");
  }
  std::vector<corpus::EventInfo> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = io::SplitCsvRow(lines[i]);
    corpus::EventInfo e;
    long long count = 0;
    if (f.size() != 4 || f[0].empty() || !Date::TryParse(f[1], &e.event_date) ||
        !ParseScenario(f[2], &e.scenario) || !io::ParseInt(f[3], &count) || count < 0) {
      throw Error(ErrorCode::kParse, "events CSV line " + std::to_string(i + 1) + " malformed",
                  {"line " + std::to_string(i + 1)});
    }
    e.event_id = f[0];
    e.sentence_count = static_cast<std::size_t>(count);
    out.push_back(std::move(e));
  }
  return out;
}

std::string ErrorJson(std::string_view code, std::string_view message,
                      const std::vector<std::string>& details) {
  OrderedJson doc;
  doc["error"]["code"] = code;
  doc["error"]["message"] = message;
  doc["error"]["details"] = details;
  return doc.dump();
}

}  // namespace pipeline
}  // namespace stancelp
