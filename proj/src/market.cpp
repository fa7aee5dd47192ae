#include "stancelp/market.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stancelp/io.hpp"

namespace stancelp::market {

namespace {

struct CsvTable {
  std::vector<std::size_t> columns;  // indices of the requested names
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line no, fields)
};

CsvTable ReadTable(std::string_view text, const std::vector<std::string_view>& names,
                   std::string_view what) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const std::vector<std::string_view> lines = io::SplitLines(text);
  if (lines.empty()) throw Error(ErrorCode::kParse, std::string(what) + ": missing header");
  std::vector<std::string> header = io::SplitCsvRow(lines[0]);
  for (std::string& h : header) h = std::string(io::Trim(h));
  CsvTable table;
  for (std::string_view name : names) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorCode::kParse,
                  std::string(what) + ": header lacks column '" + std::string(name) + "'",
                  {"line 1"});
    }
    table.columns.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (io::Trim(lines[i]).empty()) continue;
    table.rows.emplace_back(i + 1, io::SplitCsvRow(lines[i]));
  }
  return table;
}

[[noreturn]] void ParseFail(std::string_view what, std::size_t line, const std::string& why) {
  throw Error(ErrorCode::kParse,
              std::string(what) + " line " + std::to_string(line) + ": " + why,
              {"line " + std::to_string(line)});
}

const std::string& Field(const std::vector<std::string>& fields, std::size_t column,
                         std::string_view what, std::size_t line) {
  if (column >= fields.size()) ParseFail(what, line, "missing field");
  return fields[column];
}

double NumberField(const std::vector<std::string>& fields, std::size_t column,
                   std::string_view what, std::size_t line) {
  double value = 0.0;
  if (!io::ParseDouble(Field(fields, column, what, line), &value)) {
    ParseFail(what, line, "unparseable number '" + fields[column] + "'");
  }
  return value;
}

Date DateField(const std::vector<std::string>& fields, std::size_t column,
               std::string_view what, std::size_t line) {
  Date date;
  if (!Date::TryParse(io::Trim(Field(fields, column, what, line)), &date)) {
    ParseFail(what, line, "invalid date '" + fields[column] + "'");
  }
  return date;
}

template <typename Row>
void SortAndCheck(std::vector<Row>* rows, std::string_view what, Warnings* warnings) {
  const bool sorted = std::is_sorted(rows->begin(), rows->end(),
                                     [](const Row& a, const Row& b) { return a.date < b.date; });
  if (!sorted) {
    std::stable_sort(rows->begin(), rows->end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    if (warnings != nullptr) {
      warnings->push_back({"UnsortedRows", std::string(what) + ": rows were out of date order and have been sorted"});
    }
  }
  for (std::size_t i = 1; i < rows->size(); ++i) {
    if ((*rows)[i].date == (*rows)[i - 1].date) {
      throw Error(ErrorCode::kDuplicateDate,
                  std::string(what) + ": duplicate date " + (*rows)[i].date.ToString(),
                  {(*rows)[i].date.ToString()});
    }
  }
}


}  // namespace

MarketSeries ParseMarketCsv(std::string_view text, std::string ticker, Warnings* warnings) {
  const std::string what = "market CSV";
  const CsvTable table = ReadTable(text, {"date", "open", "close"}, what);
  MarketSeries series{std::move(ticker), {}};
  for (const auto& [line, fields] : table.rows) {
    PriceRow row;
    row.date = DateField(fields, table.columns[0], what, line);
    row.open = NumberField(fields, table.columns[1], what, line);
    row.close = NumberField(fields, table.columns[2], what, line);
    if (!(row.open > 0.0) || !(row.close > 0.0)) {
      throw Error(ErrorCode::kInvalidPrice,
                  what + " line " + std::to_string(line) + ": prices must be positive",
                  {"line " + std::to_string(line)});
    }
    series.rows.push_back(row);
  }
  SortAndCheck(&series.rows, what, warnings);
  return series;
}

MarketSeries LoadMarketCsv(const std::filesystem::path& path, Warnings* warnings) {
  return ParseMarketCsv(io::ReadFile(path), path.stem().string(), warnings);
}

ControlSeries ParseControlsCsv(std::string_view text, Warnings* warnings) {
  const std::string what = "controls CSV";
  const CsvTable table =
      ReadTable(text, {"date", "ffr_shock", "fg_shock", "ap_shock", "shadow_rate"}, what);
  ControlSeries series;
  for (const auto& [line, fields] : table.rows) {
    ControlRow row;
    row.date = DateField(fields, table.columns[0], what, line);
    row.ffr_shock = NumberField(fields, table.columns[1], what, line);
    row.fg_shock = NumberField(fields, table.columns[2], what, line);
    row.ap_shock = NumberField(fields, table.columns[3], what, line);
    row.shadow_rate = NumberField(fields, table.columns[4], what, line);
    series.rows.push_back(row);
  }
  SortAndCheck(&series.rows, what, warnings);
  return series;
}

ControlSeries LoadControlsCsv(const std::filesystem::path& path, Warnings* warnings) {
  return ParseControlsCsv(io::ReadFile(path), warnings);
}

std::size_t AnchorIndex(const MarketSeries& series, const Date& event_date) {
  auto it = std::lower_bound(series.rows.begin(), series.rows.end(), event_date,
                             [](const PriceRow& row, const Date& d) { return row.date < d; });
  if (it == series.rows.end()) {
    throw Error(ErrorCode::kNoAnchor, "no " + series.ticker + " trading day on or after " +
                                          event_date.ToString());
  }
  return static_cast<std::size_t>(it - series.rows.begin());
}

Date AnchorEvent(const MarketSeries& series, const Date& event_date, Warnings* warnings) {
  const Date anchor = series.rows[AnchorIndex(series, event_date)].date;
  if (anchor != event_date && warnings != nullptr) {
    warnings->push_back({"NonTradingDay", "event date " + event_date.ToString() +
                                              " is not a trading day; anchored to " +
                                              anchor.ToString()});
  }
  return anchor;
}

double ComputeOutcome(const MarketSeries& series, const Date& anchor_date, int horizon) {
  const std::size_t i = AnchorIndex(series, anchor_date);
  if (series.rows[i].date != anchor_date) {
    throw Error(ErrorCode::kNoAnchor, anchor_date.ToString() + " is not a row of " + series.ticker);
  }
  if (horizon < 0 || i + static_cast<std::size_t>(horizon) >= series.rows.size()) {
    throw Error(ErrorCode::kInsufficientHorizon,
                "horizon " + std::to_string(horizon) + " from " + anchor_date.ToString() +
                    " runs past the end of " + series.ticker);
  }
  return std::log(series.rows[i + static_cast<std::size_t>(horizon)].close) -
         std::log(series.rows[i].open);
}

OutcomePanel BuildOutcomePanel(const MarketSeries& series, const std::vector<EventRef>& events,
                               int max_horizon, Warnings* warnings) {
  if (max_horizon < 0) throw Error(ErrorCode::kInvalidConfig, "horizons must be >= 0");
  OutcomePanel panel{series.ticker, {}};
  for (const EventRef& event : events) {
    Date anchor;
    try {
      anchor = AnchorEvent(series, event.event_date, warnings);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoAnchor) throw;
      if (warnings != nullptr) {
        warnings->push_back({"NoAnchor", "event '" + event.event_id + "' dropped: " + e.what()});
      }
      continue;
    }
    const std::size_t i = AnchorIndex(series, anchor);
    const std::size_t available = series.rows.size() - i - 1;
    const int last = static_cast<int>(
        std::min<std::size_t>(available, static_cast<std::size_t>(max_horizon)));
    for (int h = 0; h <= last; ++h) {
      panel.rows.push_back(OutcomeRow{event.event_id, event.event_date, anchor, h,
                                      ComputeOutcome(series, anchor, h)});
    }
    if (last < max_horizon && warnings != nullptr) {
      warnings->push_back({"TruncatedHorizon", "event '" + event.event_id + "': horizons 0.." +
                                                   std::to_string(last) + " of 0.." +
                                                   std::to_string(max_horizon) + " available"});
    }
  }
  return panel;
}

std::vector<EventControls> JoinControls(const std::vector<EventRef>& events,
                                        const ControlSeries& controls, Warnings* warnings) {
  std::vector<EventControls> out;
  for (const EventRef& event : events) {
    auto it = std::lower_bound(controls.rows.begin(), controls.rows.end(), event.event_date,
                               [](const ControlRow& row, const Date& d) { return row.date < d; });
    if (it == controls.rows.end() ||
        event.event_date.DaysUntil(it->date) > kControlStalenessDays) {
      if (warnings != nullptr) {
        warnings->push_back({"UnmatchedControls", "event '" + event.event_id + "' (" +
                                                      event.event_date.ToString() +
                                                      ") has no control row within " +
                                                      std::to_string(kControlStalenessDays) +
                                                      " days; dropped"});
      }
      continue;
    }
    if (it->date != event.event_date && warnings != nullptr) {
      warnings->push_back({"ForwardMatchedControls", "event '" + event.event_id +
                                                         "' uses control row of " +
                                                         it->date.ToString()});
    }
    out.push_back(EventControls{event.event_id, event.event_date, it->date, *it});
  }
  return out;
}

std::string SerializeOutcomePanel(const OutcomePanel& panel) {
  std::string out = "event_id,event_date,anchor_date,horizon,outcome\n";
  for (const OutcomeRow& row : panel.rows) {
    out += io::CsvField(row.event_id) + ',' + row.event_date.ToString() + ',' +
           row.anchor_date.ToString() + ',' + std::to_string(row.horizon) + ',' +
           io::FormatExact(row.outcome) + '\n';
  }
  return out;
}

OutcomePanel ParseOutcomePanel(std::string_view text, std::string ticker) {
  const std::string what = "outcome panel";
  const CsvTable table =
      ReadTable(text, {"event_id", "event_date", "anchor_date", "horizon", "outcome"}, what);
  OutcomePanel panel{std::move(ticker), {}};
  for (const auto& [line, fields] : table.rows) {
    OutcomeRow row;
    row.event_id = Field(fields, table.columns[0], what, line);
    row.event_date = DateField(fields, table.columns[1], what, line);
    row.anchor_date = DateField(fields, table.columns[2], what, line);
    long long h = 0;
    if (!io::ParseInt(Field(fields, table.columns[3], what, line), &h) || h < 0) {
      ParseFail(what, line, "invalid horizon");
    }
    row.horizon = static_cast<int>(h);
    row.outcome = NumberField(fields, table.columns[4], what, line);
    panel.rows.push_back(std::move(row));
  }
  return panel;
}

std::string SerializeEventControls(const std::vector<EventControls>& controls) {
  std::string out = "event_id,event_date,control_date,ffr_shock,fg_shock,ap_shock,shadow_rate\n";
  for (const EventControls& c : controls) {
    out += io::CsvField(c.event_id) + ',' + c.event_date.ToString() + ',' +
           c.control_date.ToString() + ',' + io::FormatExact(c.values.ffr_shock) + ',' +
           io::FormatExact(c.values.fg_shock) + ',' + io::FormatExact(c.values.ap_shock) + ',' +
           io::FormatExact(c.values.shadow_rate) + '\n';
  }
  return out;
}

std::vector<EventControls> ParseEventControls(std::string_view text) {
  const std::string what = "event controls";
  const CsvTable table = ReadTable(text,
                                   {"event_id", "event_date", "control_date", "ffr_shock",
                                    "fg_shock", "ap_shock", "shadow_rate"},
                                   what);
  std::vector<EventControls> out;
  for (const auto& [line, fields] : table.rows) {
    EventControls c;
    c.event_id = Field(fields, table.columns[0], what, line);
    c.event_date = DateField(fields, table.columns[1], what, line);
    c.control_date = DateField(fields, table.columns[2], what, line);
    c.values.date = c.control_date;
    c.values.ffr_shock = NumberField(fields, table.columns[3], what, line);
    c.values.fg_shock = NumberField(fields, table.columns[4], what, line);
    c.values.ap_shock = NumberField(fields, table.columns[5], what, line);
    c.values.shadow_rate = NumberField(fields, table.columns[6], what, line);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace stancelp::market
