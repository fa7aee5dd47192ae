#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>

#include "stancelp/io.hpp"
#include "stancelp/rng.hpp"
#include "stancelp/stance.hpp"

namespace stancelp::synthetic {

namespace {

constexpr std::uint64_t kLabelStream = 1;
constexpr std::uint64_t kControlStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kLayoutStream = 4;

std::vector<Date> TradingDays(Date start, std::size_t count) {
  std::vector<Date> days;
  for (Date d = start; days.size() < count; d = d.AddDays(1)) {
    const unsigned wd = d.weekday().c_encoding();
    if (wd != 0 && wd != 6) days.push_back(d);
  }
  return days;
}

ControlRow DrawControls(KeyedRng* rng) {
  ControlRow c;
  c.ffr_shock = rng->Normal();
  c.fg_shock = rng->Normal();
  c.ap_shock = rng->Normal();
  c.shadow_rate = -2.0 + 3.0 * rng->Uniform();
  return c;
}

double Systematic(double intercept, const std::array<double, 4>& b, const ControlRow& c) {
  return intercept + b[0] * c.ffr_shock + b[1] * c.fg_shock + b[2] * c.ap_shock +
         b[3] * c.shadow_rate;
}

}  // namespace

Data Generate(const Spec& spec) {
  Data data;
  data.seed = spec.seed;
  const int lead = 5;
  const std::size_t rows =
      static_cast<std::size_t>(lead + spec.events * spec.spacing + spec.horizons + 5);
  const std::vector<Date> days = TradingDays(Date(2011, 4, 25), rows);

  std::map<std::size_t, double> close_override;
  std::map<std::size_t, std::size_t> anchor_event;  // row -> event index
  bool weekend_used = false;
  for (int i = 0; i < spec.events; ++i) {
    const std::size_t anchor = static_cast<std::size_t>(lead + i * spec.spacing);
    Event e;
    char id[32];
    std::snprintf(id, sizeof(id), "PC%03d", i + 1);
    e.event_id = id;
    e.anchor_date = days[anchor];
    e.event_date = e.anchor_date;
    if (spec.weekend_event && !weekend_used && i > 0 &&
        e.anchor_date.weekday() == std::chrono::Monday) {
      e.event_date = e.anchor_date.AddDays(-2);
      weekend_used = true;
    }

    KeyedRng labels({spec.seed, kLabelStream, static_cast<std::uint64_t>(i)});
    e.dovish = labels.Below(9);
    e.hawkish = labels.Below(9);
    if (e.dovish + e.hawkish == 0) e.dovish = 1;
    e.neutral = 2 + labels.Below(10);
    e.sentiment = (static_cast<double>(e.dovish) - static_cast<double>(e.hawkish)) /
                  static_cast<double>(e.dovish + e.hawkish);

    KeyedRng controls({spec.seed, kControlStream, static_cast<std::uint64_t>(i)});
    e.controls = DrawControls(&controls);
    e.controls.date = e.event_date;

    KeyedRng noise({spec.seed, kNoiseStream, static_cast<std::uint64_t>(i)});
    const double base = Systematic(spec.intercept, spec.controls_beta, e.controls);
    for (int h = 0; h <= spec.horizons; ++h) {
      e.outcomes.push_back(base + spec.beta(h) * e.sentiment + spec.noise_sd * noise.Normal());
    }
    anchor_event[anchor] = data.events.size();
    data.events.push_back(std::move(e));
  }

  data.market.ticker = "SPY";
  double price = 100.0;
  for (std::size_t r = 0; r < rows; ++r) {
    PriceRow row{days[r], price, price};
    if (auto it = anchor_event.find(r); it != anchor_event.end()) {
      const Event& e = data.events[it->second];
      for (std::size_t h = 0; h < e.outcomes.size(); ++h) {
        close_override[r + h] = row.open * std::exp(e.outcomes[h]);
      }
    }
    if (auto it = close_override.find(r); it != close_override.end()) row.close = it->second;
    data.market.rows.push_back(row);
    price = row.close;
  }
  for (const Event& e : data.events) data.controls.rows.push_back(e.controls);
  return data;
}

std::vector<IndicatorPoint> Indicators(const Data& data) {
  std::vector<IndicatorPoint> points;
  for (const Event& e : data.events) {
    points.push_back(IndicatorPoint{e.event_id, e.event_date, Scenario::kPressConference,
                                    Granularity::kFine, IndicatorKind::kSentiment, e.sentiment,
                                    LabelCounts{e.dovish, e.hawkish, e.neutral}});
  }
  return points;
}

std::vector<EventRef> Refs(const Data& data) {
  std::vector<EventRef> refs;
  for (const Event& e : data.events) refs.push_back(EventRef{e.event_id, e.event_date});
  return refs;
}

RegressionDataset Dataset(int n, double beta, double noise_sd, std::uint64_t seed, int trial) {
  const std::array<double, 4> b = Spec{}.controls_beta;
  const double intercept = Spec{}.intercept;
  KeyedRng rng({seed, 99, static_cast<std::uint64_t>(trial)});
  RegressionDataset d{0, {}};
  for (int i = 0; i < n; ++i) {
    const double s = -1.0 + 2.0 * rng.Uniform();
    const ControlRow c = DrawControls(&rng);
    const double y = Systematic(intercept, b, c) + beta * s + noise_sd * rng.Normal();
    d.rows.push_back(RegressionRow{"T" + std::to_string(i), y, s, c.ffr_shock, c.fg_shock,
                                   c.ap_shock, c.shadow_rate});
  }
  return d;
}

namespace {

const char* const kDovish[] = {
    "Policy will remain accommodative for some time.",
    "We stand ready to expand asset purchases if needed.",
    "The federal funds rate will stay at the lower bound.",
    "Downside risks to the outlook call for a steady hand.",
};
const char* const kHawkish[] = {
    "The Committee expects to raise rates gradually.",
    "We will continue tapering our purchases.",
    "Inflation pressures have broadened across sectors.",
    "Further tightening may be appropriate.",
};
const char* const kNeutral[] = {
    "Thank you for the question.",
    "Growth was 2.5 percent last year.",
    "Mr. Smith raised a fair point.",
    "The data will guide our decisions.",
};
const char* const kQuestions[] = {
    "Mr. Chair, what is your view of the labor market?",
    "How do you read the latest U.S. data on spending?",
    "Could you say more about the statement?",
};

constexpr std::size_t kUnanimousTurnLength = 2;

struct Unit {
  Stance stance;
  std::string text;
};

std::string Wrap(const std::vector<std::string>& sentences) {
  // Two sentences per physical line, to exercise continuation lines.
  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out += (i % 2 == 0) ? "\n" : " ";
    out += sentences[i];
  }
  return out;
}

void WriteSharedInputs(const Data& data, const std::filesystem::path& dir, std::uint64_t run_seed) {
  const Lexicon lexicon = Lexicon::Default();
  nlohmann::ordered_json lex;
  lex["hawkish"] = lexicon.hawkish();
  lex["dovish"] = lexicon.dovish();
  io::WriteFile(dir / "lexicon.json", lex.dump(2) + "\n");

  std::string market = "date,open,high,low,close\n";
  for (const PriceRow& r : data.market.rows) {
    market += r.date.ToString() + ',' + io::FormatExact(r.open) + ',' +
              io::FormatExact(std::max(r.open, r.close)) + ',' +
              io::FormatExact(std::min(r.open, r.close)) + ',' + io::FormatExact(r.close) + '\n';
  }
  io::WriteFile(dir / (data.market.ticker + ".csv"), market);

  std::string controls = "date,ffr_shock,fg_shock,ap_shock,shadow_rate\n";
  for (const ControlRow& c : data.controls.rows) {
    controls += c.date.ToString() + ',' + io::FormatExact(c.ffr_shock) + ',' +
                io::FormatExact(c.fg_shock) + ',' + io::FormatExact(c.ap_shock) + ',' +
                io::FormatExact(c.shadow_rate) + '\n';
  }
  io::WriteFile(dir / "controls.csv", controls);

  nlohmann::ordered_json config;
  config["manifest"] = "manifest.json";
  config["labels"] = "labels.jsonl";
  config["market_csv"] = data.market.ticker + ".csv";
  config["controls_csv"] = "controls.csv";
  config["kind"] = "sentiment";
  config["granularity"] = "fine";
  config["scenario"] = "all";
  config["section"] = "all";
  config["horizons"] = 15;
  config["reps"] = 2000;
  config["alpha"] = 0.10;
  config["seed"] = run_seed;
  config["zero_fill"] = false;
  io::WriteFile(dir / "config.json", config.dump(2) + "\n");
  config.erase("labels");
  config["lexicon"] = "lexicon.json";
  io::WriteFile(dir / "config_lexicon.json", config.dump(2) + "\n");
}

}  // namespace

void WriteFixture(const Data& data, const std::filesystem::path& dir, std::uint64_t run_seed) {
  namespace fs = std::filesystem;
  nlohmann::ordered_json manifest = nlohmann::ordered_json::object();
  std::vector<LabelRecord> labels;

  for (std::size_t i = 0; i < data.events.size(); ++i) {
    const Event& e = data.events[i];
    std::vector<Unit> units;
    for (std::uint64_t k = 0; k < e.dovish; ++k) units.push_back({Stance::kDovish, kDovish[k % 4]});
    for (std::uint64_t k = 0; k < e.hawkish; ++k) units.push_back({Stance::kHawkish, kHawkish[k % 4]});
    for (std::uint64_t k = 0; k < e.neutral; ++k) units.push_back({Stance::kNeutral, kNeutral[k % 4]});
    KeyedRng layout({data.seed, kLayoutStream, i});
    for (std::size_t k = units.size(); k > 1; --k) {
      std::swap(units[k - 1], units[layout.Below(k)]);
    }

    const std::size_t opening = (units.size() + 2) / 3;
    std::size_t index = 0;
    std::string opening_text = "CHAIR POWELL: ";
    std::vector<std::string> opening_sentences;
    for (std::size_t k = 0; k < opening; ++k) {
      opening_sentences.push_back(units[k].text);
      const Tone tone = units[k].stance == Stance::kDovish    ? Tone::kPositive
                        : units[k].stance == Stance::kHawkish ? Tone::kNegative
                                                              : Tone::kNeutral;
      labels.push_back(LabelRecord{e.event_id, index++, units[k].stance, tone});
    }
    opening_text += Wrap(opening_sentences) + "\n";

    std::string qanda;
    std::size_t question = 0;
    for (std::size_t k = opening; k < units.size();) {
      qanda += std::string("MR. REPORTER: ") + kQuestions[question++ % 3] + "\n\n";
      labels.push_back(LabelRecord{e.event_id, index++, Stance::kNeutral, std::nullopt});
      const std::size_t take = std::min<std::size_t>(1 + layout.Below(3), units.size() - k);
      std::vector<std::string> answer;
      for (std::size_t t = 0; t < take; ++t, ++k) {
        answer.push_back(units[k].text);
        labels.push_back(LabelRecord{e.event_id, index++, units[k].stance, std::nullopt});
      }
      qanda += "CHAIR POWELL: " + Wrap(answer) + "\n\n";
    }

    const std::string date = e.event_date.ToString();
    const std::string opening_path = "transcripts/" + e.event_id + "_opening_remarks.txt";
    io::WriteFile(dir / opening_path, opening_text);
    manifest[opening_path] = {{"event_id", e.event_id},
                              {"date", date},
                              {"scenario", "press_conference"},
                              {"section", "opening_remarks"}};
    if (!qanda.empty()) {
      const std::string qanda_path = "transcripts/" + e.event_id + "_qanda.txt";
      io::WriteFile(dir / qanda_path, qanda);
      manifest[qanda_path] = {{"event_id", e.event_id},
                              {"date", date},
                              {"scenario", "press_conference"},
                              {"section", "qanda"}};
    }
  }
  io::WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
  io::WriteFile(dir / "labels.jsonl", stance::SerializeLabels(labels));
  WriteSharedInputs(data, dir, run_seed);
}

void WriteUnanimousFixture(const Data& data, const std::filesystem::path& dir,
                           std::uint64_t run_seed) {
  nlohmann::ordered_json manifest = nlohmann::ordered_json::object();
  std::vector<LabelRecord> labels;

  for (std::size_t i = 0; i < data.events.size(); ++i) {
    const Event& e = data.events[i];
    std::vector<Stance> turns;
    for (std::uint64_t k = 0; k < e.dovish; ++k) turns.push_back(Stance::kDovish);
    for (std::uint64_t k = 0; k < e.hawkish; ++k) turns.push_back(Stance::kHawkish);
    for (std::uint64_t k = 0; k < (e.neutral + 1) / 2; ++k) turns.push_back(Stance::kNeutral);
    KeyedRng layout({data.seed, kLayoutStream, i});
    for (std::size_t k = turns.size(); k > 1; --k) {
      std::swap(turns[k - 1], turns[layout.Below(k)]);
    }

    std::string qanda;
    std::size_t index = 0;
    for (std::size_t t = 0; t < turns.size(); ++t) {
      qanda += std::string("MR. REPORTER: ") + kQuestions[t % 3] + "\n\n";
      labels.push_back(LabelRecord{e.event_id, index++, Stance::kNeutral, std::nullopt});
      const char* const* pool = turns[t] == Stance::kDovish    ? kDovish
                                : turns[t] == Stance::kHawkish ? kHawkish
                                                               : kNeutral;
      std::vector<std::string> answer;
      for (std::size_t k = 0; k < kUnanimousTurnLength; ++k) {
        answer.push_back(pool[(t + k) % 4]);
        labels.push_back(LabelRecord{e.event_id, index++, turns[t], std::nullopt});
      }
      qanda += "CHAIR POWELL: " + Wrap(answer) + "\n\n";
    }
    const std::string path = "transcripts/" + e.event_id + "_qanda.txt";
    io::WriteFile(dir / path, qanda);
    manifest[path] = {{"event_id", e.event_id},
                      {"date", e.event_date.ToString()},
                      {"scenario", "press_conference"},
                      {"section", "qanda"}};
  }
  io::WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
  io::WriteFile(dir / "labels.jsonl", stance::SerializeLabels(labels));
  WriteSharedInputs(data, dir, run_seed);
}

}  // namespace stancelp::synthetic
