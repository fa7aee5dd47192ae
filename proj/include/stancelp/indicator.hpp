#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stancelp/stance.hpp"

namespace stancelp {

enum class Granularity { kFine, kCoarse };
enum class IndicatorKind { kSentiment, kVoiceTone };

std::string_view ToString(Granularity granularity);
std::string_view ToString(IndicatorKind kind);
bool ParseGranularity(std::string_view text, Granularity* out);
bool ParseIndicatorKind(std::string_view text, IndicatorKind* out);

struct LabelCounts {
  std::uint64_t dovish = 0;
  std::uint64_t hawkish = 0;
  std::uint64_t neutral = 0;

  std::uint64_t total() const { return dovish + hawkish + neutral; }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct ToneCounts {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t neutral = 0;

  std::uint64_t total() const { return positive + negative + neutral; }
  friend bool operator==(const ToneCounts&, const ToneCounts&) = default;
};

// Reduced fraction; den > 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double ToDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

enum class ZeroPolicy { kMissing, kZeroFill };

namespace indicator {

// (favorable - adverse) / (favorable + adverse) as a reduced fraction;
// nullopt when both are zero.
std::optional<Ratio> PolarityRatio(std::uint64_t favorable, std::uint64_t adverse);

std::optional<double> SentimentScore(const LabelCounts& counts,
                                     ZeroPolicy policy = ZeroPolicy::kMissing);
std::optional<double> VoiceToneScore(const ToneCounts& counts,
                                     ZeroPolicy policy = ZeroPolicy::kMissing);

}  // namespace indicator

struct IndicatorPoint {
  std::string event_id;
  Date event_date;
  Scenario scenario = Scenario::kPressConference;
  Granularity granularity = Granularity::kFine;
  IndicatorKind kind = IndicatorKind::kSentiment;
  std::optional<double> score;
  // For kVoiceTone the fields carry positive / negative / neutral.
  LabelCounts counts;

  friend bool operator==(const IndicatorPoint&, const IndicatorPoint&) = default;
};

struct AggregateOptions {
  ZeroPolicy zero_policy = ZeroPolicy::kMissing;
  std::optional<Section> section;  // nullopt pools all sections
  std::string speaker_filter;      // substring; empty keeps every speaker
};

namespace indicator {

// Majority label of one unit; a tie for the top count yields Neutral.
Stance MajorityStance(const LabelCounts& counts);
Tone MajorityTone(const ToneCounts& counts);

// Throws kEmptyEvent when no sentence survives the section/speaker filters.
IndicatorPoint AggregateEvent(const LabeledEvent& event, Granularity granularity,
                              IndicatorKind kind, const AggregateOptions& options = {});

// One point per event, sorted by (date, event_id). Events left empty by the
// filters are dropped with a warning. Throws kEmptySeries.
std::vector<IndicatorPoint> IndicatorSeries(const std::vector<LabeledEvent>& events,
                                            Granularity granularity, IndicatorKind kind,
                                            std::optional<Scenario> scenario_filter,
                                            const AggregateOptions& options = {},
                                            Warnings* warnings = nullptr);

// Header: event_id,date,scenario,granularity,kind,dovish,hawkish,neutral,score
std::string SerializeIndicatorCsv(const std::vector<IndicatorPoint>& points);
std::vector<IndicatorPoint> ParseIndicatorCsv(std::string_view text);

}  // namespace indicator
}  // namespace stancelp
