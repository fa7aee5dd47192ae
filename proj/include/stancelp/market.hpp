#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stancelp/date.hpp"
#include "stancelp/error.hpp"

namespace stancelp {

struct PriceRow {
  Date date;
  double open = 0.0;
  double close = 0.0;
};

// Daily bars; dates strictly increasing, prices positive.
struct MarketSeries {
  std::string ticker;
  std::vector<PriceRow> rows;
};

struct ControlRow {
  Date date;
  double ffr_shock = 0.0;
  double fg_shock = 0.0;
  double ap_shock = 0.0;
  double shadow_rate = 0.0;
};

struct ControlSeries {
  std::vector<ControlRow> rows;
};

// Event identity as needed for alignment.
struct EventRef {
  std::string event_id;
  Date event_date;
};

struct OutcomeRow {
  std::string event_id;
  Date event_date;
  Date anchor_date;
  int horizon = 0;
  double outcome = 0.0;
};

struct OutcomePanel {
  std::string ticker;
  std::vector<OutcomeRow> rows;  // grouped by event, horizons ascending
};

struct EventControls {
  std::string event_id;
  Date event_date;
  Date control_date;
  ControlRow values;
};

namespace market {

// Oldest control row that may stand in for a later event date.
inline constexpr int kControlStalenessDays = 7;

// Header must contain date, open, close (any order; other columns ignored).
// Unsorted input is sorted with a warning.
MarketSeries ParseMarketCsv(std::string_view text, std::string ticker, Warnings* warnings);
// Ticker defaults to the file stem.
MarketSeries LoadMarketCsv(const std::filesystem::path& path, Warnings* warnings);

// Header must contain date, ffr_shock, fg_shock, ap_shock, shadow_rate.
ControlSeries ParseControlsCsv(std::string_view text, Warnings* warnings);
ControlSeries LoadControlsCsv(const std::filesystem::path& path, Warnings* warnings);

// Row index of the first series date >= event_date. Throws kNoAnchor.
std::size_t AnchorIndex(const MarketSeries& series, const Date& event_date);
// Same, as a date; warns when the event falls on a non-trading day.
Date AnchorEvent(const MarketSeries& series, const Date& event_date, Warnings* warnings);

// ln(close[i + h]) - ln(open[i]) where row i holds anchor_date.
// Throws kInsufficientHorizon, or kNoAnchor if anchor_date is not a row.
double ComputeOutcome(const MarketSeries& series, const Date& anchor_date, int horizon);

// Horizons 0..max_horizon per event, truncated at the end of data. Events
// without an anchor are dropped; both cases are reported as warnings.
OutcomePanel BuildOutcomePanel(const MarketSeries& series, const std::vector<EventRef>& events,
                               int max_horizon, Warnings* warnings);

// Matches each event to the first control row on or after its date, within
// kControlStalenessDays. Unmatched events are dropped with a warning.
std::vector<EventControls> JoinControls(const std::vector<EventRef>& events,
                                        const ControlSeries& controls, Warnings* warnings);

// Stage artifacts; values are written with round-trip precision.
std::string SerializeOutcomePanel(const OutcomePanel& panel);
OutcomePanel ParseOutcomePanel(std::string_view text, std::string ticker);
std::string SerializeEventControls(const std::vector<EventControls>& controls);
std::vector<EventControls> ParseEventControls(std::string_view text);

}  // namespace market
}  // namespace stancelp
