#include "stancelp/indicator.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "stancelp/io.hpp"

namespace stancelp {

std::string_view ToString(Granularity granularity) {
  return granularity == Granularity::kFine ? "fine" : "coarse";
}

std::string_view ToString(IndicatorKind kind) {
  return kind == IndicatorKind::kSentiment ? "sentiment" : "voice_tone";
}

bool ParseGranularity(std::string_view text, Granularity* out) {
  if (text == "fine") {
    *out = Granularity::kFine;
  } else if (text == "coarse") {
    *out = Granularity::kCoarse;
  } else {
    return false;
  }
  return true;
}

bool ParseIndicatorKind(std::string_view text, IndicatorKind* out) {
  if (text == "sentiment") {
    *out = IndicatorKind::kSentiment;
  } else if (text == "voice_tone") {
    *out = IndicatorKind::kVoiceTone;
  } else {
    return false;
  }
  return true;
}

namespace indicator {

std::optional<Ratio> PolarityRatio(std::uint64_t favorable, std::uint64_t adverse) {
  constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / 2);
  if (favorable > kMax || adverse > kMax) {
    throw Error(ErrorCode::kInternal, "label counts overflow");
  }
  const auto f = static_cast<std::int64_t>(favorable);
  const auto a = static_cast<std::int64_t>(adverse);
  const std::int64_t den = f + a;
  if (den == 0) return std::nullopt;
  const std::int64_t num = f - a;
  const std::int64_t g = std::gcd(num, den);
  return Ratio{num / g, den / g};
}

namespace {

std::optional<double> Score(std::uint64_t favorable, std::uint64_t adverse, ZeroPolicy policy) {
  const std::optional<Ratio> ratio = PolarityRatio(favorable, adverse);
  if (ratio) return ratio->ToDouble();
  if (policy == ZeroPolicy::kZeroFill) return 0.0;
  return std::nullopt;
}

void Add(LabelCounts* counts, Stance stance) {
  switch (stance) {
    case Stance::kDovish: ++counts->dovish; break;
    case Stance::kHawkish: ++counts->hawkish; break;
    case Stance::kNeutral: ++counts->neutral; break;
  }
}

void Add(ToneCounts* counts, Tone tone) {
  switch (tone) {
    case Tone::kPositive: ++counts->positive; break;
    case Tone::kNegative: ++counts->negative; break;
    case Tone::kNeutral: ++counts->neutral; break;
  }
}

template <typename Label>
Label Majority(std::uint64_t a, std::uint64_t b, std::uint64_t c, Label la, Label lb,
               Label neutral) {
  if (a > b && a > c) return la;
  if (b > a && b > c) return lb;
  (void)c;  // a strict neutral majority and every tie both map to neutral
  return neutral;
}

}  // namespace

std::optional<double> SentimentScore(const LabelCounts& counts, ZeroPolicy policy) {
  return Score(counts.dovish, counts.hawkish, policy);
}

std::optional<double> VoiceToneScore(const ToneCounts& counts, ZeroPolicy policy) {
  return Score(counts.positive, counts.negative, policy);
}

Stance MajorityStance(const LabelCounts& counts) {
  return Majority(counts.dovish, counts.hawkish, counts.neutral, Stance::kDovish,
                  Stance::kHawkish, Stance::kNeutral);
}

Tone MajorityTone(const ToneCounts& counts) {
  return Majority(counts.positive, counts.negative, counts.neutral, Tone::kPositive,
                  Tone::kNegative, Tone::kNeutral);
}

IndicatorPoint AggregateEvent(const LabeledEvent& event, Granularity granularity,
                              IndicatorKind kind, const AggregateOptions& options) {
  std::vector<const LabeledSentence*> kept;
  for (const LabeledSentence& s : event.sentences) {
    if (options.section && s.sentence.section != *options.section) continue;
    if (!options.speaker_filter.empty() &&
        s.sentence.speaker.find(options.speaker_filter) == std::string::npos) {
      continue;
    }
    kept.push_back(&s);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyEvent, "event '" + event.event_id + "' has no sentences");
  }

  IndicatorPoint point{event.event_id, event.event_date, event.scenario, granularity, kind,
                       std::nullopt, {}};
  if (kind == IndicatorKind::kSentiment) {
    LabelCounts counts;
    if (granularity == Granularity::kFine) {
      for (const LabeledSentence* s : kept) Add(&counts, s->stance);
    } else {
      std::map<std::size_t, LabelCounts> turns;
      for (const LabeledSentence* s : kept) Add(&turns[s->sentence.turn_index], s->stance);
      for (const auto& [turn, turn_counts] : turns) Add(&counts, MajorityStance(turn_counts));
    }
    point.counts = counts;
    point.score = SentimentScore(counts, options.zero_policy);
  } else {
    ToneCounts counts;
    if (granularity == Granularity::kFine) {
      for (const LabeledSentence* s : kept) {
        if (s->tone) Add(&counts, *s->tone);
      }
    } else {
      std::map<std::size_t, ToneCounts> turns;
      for (const LabeledSentence* s : kept) {
        if (s->tone) Add(&turns[s->sentence.turn_index], *s->tone);
      }
      for (const auto& [turn, turn_counts] : turns) Add(&counts, MajorityTone(turn_counts));
    }
    point.counts = LabelCounts{counts.positive, counts.negative, counts.neutral};
    point.score = VoiceToneScore(counts, options.zero_policy);
  }
  return point;
}

std::vector<IndicatorPoint> IndicatorSeries(const std::vector<LabeledEvent>& events,
                                            Granularity granularity, IndicatorKind kind,
                                            std::optional<Scenario> scenario_filter,
                                            const AggregateOptions& options,
                                            Warnings* warnings) {
  std::vector<IndicatorPoint> points;
  bool any_in_scenario = false;
  for (const LabeledEvent& event : events) {
    if (scenario_filter && event.scenario != *scenario_filter) continue;
    any_in_scenario = true;
    try {
      points.push_back(AggregateEvent(event, granularity, kind, options));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyEvent) throw;
      if (warnings != nullptr) warnings->push_back({"EmptyEvent", e.what()});
    }
  }
  if (!any_in_scenario || points.empty()) {
    throw Error(ErrorCode::kEmptySeries,
                scenario_filter ? "no events for scenario '" +
                                      std::string(ToString(*scenario_filter)) + "'"
                                : std::string("no events to aggregate"));
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const IndicatorPoint& a, const IndicatorPoint& b) {
                     return std::tie(a.event_date, a.event_id) < std::tie(b.event_date, b.event_id);
                   });
  return points;
}

std::string SerializeIndicatorCsv(const std::vector<IndicatorPoint>& points) {
  std::string out = "event_id,date,scenario,granularity,kind,dovish,hawkish,neutral,score\n";
  for (const IndicatorPoint& p : points) {
    out += io::CsvField(p.event_id);
    out += ',' + p.event_date.ToString();
    out += ',' + std::string(ToString(p.scenario));
    out += ',' + std::string(ToString(p.granularity));
    out += ',' + std::string(ToString(p.kind));
    out += ',' + std::to_string(p.counts.dovish);
    out += ',' + std::to_string(p.counts.hawkish);
    out += ',' + std::to_string(p.counts.neutral);
    out += ',';
    if (p.score) out += io::FormatExact(*p.score);
    out += '\n';
  }
  return out;
}

std::vector<IndicatorPoint> ParseIndicatorCsv(std::string_view text) {
  const std::vector<std::string_view> lines = io::SplitLines(text);
  if (lines.empty() ||
      lines[0] != "event_id,date,scenario,granularity,kind,dovish,hawkish,neutral,score") {
    throw Error(ErrorCode::kParse, "indicator CSV: unexpected header");
  }
  std::vector<IndicatorPoint> points;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fail = [&] {
      throw Error(ErrorCode::kParse, "indicator CSV line " + std::to_string(i + 1) + " malformed",
                  {"line " + std::to_string(i + 1)});
    };
    const std::vector<std::string> f = io::SplitCsvRow(lines[i]);
    if (f.size() != 9) fail();
    IndicatorPoint p;
    p.event_id = f[0];
    long long d = 0, h = 0, n = 0;
    if (p.event_id.empty() || !Date::TryParse(f[1], &p.event_date) ||
        !ParseScenario(f[2], &p.scenario) || !ParseGranularity(f[3], &p.granularity) ||
        !ParseIndicatorKind(f[4], &p.kind) || !io::ParseInt(f[5], &d) ||
        !io::ParseInt(f[6], &h) || !io::ParseInt(f[7], &n) || d < 0 || h < 0 || n < 0) {
      fail();
    }
    p.counts = LabelCounts{static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(h),
                           static_cast<std::uint64_t>(n)};
    if (!f[8].empty()) {
      double score = 0;
      if (!io::ParseDouble(f[8], &score) || score < -1.0 || score > 1.0) fail();
      p.score = score;
    }
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace indicator
}  // namespace stancelp
