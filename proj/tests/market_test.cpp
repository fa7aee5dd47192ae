#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stancelp/error.hpp"
#include "stancelp/market.hpp"

namespace stancelp {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

// Weekday rows starting Monday 2020-01-06 with random-walk prices.
MarketSeries Weekdays(int n, std::uint64_t seed = 1) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> step(0.0, 0.01);
  MarketSeries s{"SPY", {}};
  Date d = Date::Parse("2020-01-06");
  double level = 300.0;
  while (static_cast<int>(s.rows.size()) < n) {
    if (d.weekday() != std::chrono::Saturday && d.weekday() != std::chrono::Sunday) {
      double open = level * std::exp(step(gen));
      level = open * std::exp(step(gen));
      s.rows.push_back({d, open, level});
    }
    d = d.AddDays(1);
  }
  return s;
}

TEST(LoadMarket, ValidRows) {
  Warnings w;
  auto s = market::ParseMarketCsv("date,open,high,low,close\n2020-01-02,100,101,99,100.5\n"
                                  "2020-01-03,100.5,102,100,101\n",
                                  "SPY", &w);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.rows[1].close, 101.0);
  EXPECT_TRUE(w.empty());
}

TEST(LoadMarket, ColumnOrderIsFree) {
  Warnings w;
  auto s = market::ParseMarketCsv("close,date,open\r\n2,2020-01-02,1\r\n", "X", &w);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_EQ(s.rows[0].open, 1.0);
  EXPECT_EQ(s.rows[0].close, 2.0);
}

TEST(LoadMarket, Errors) {
  Warnings w;
  EXPECT_EQ(CodeOf([&] { market::ParseMarketCsv("date,open,close\n2020-01-02,0,1\n", "X", &w); }),
            ErrorCode::kInvalidPrice);
  EXPECT_EQ(CodeOf([&] { market::ParseMarketCsv("date,open,close\n2020-01-02,1,-3\n", "X", &w); }),
            ErrorCode::kInvalidPrice);
  EXPECT_EQ(CodeOf([&] {
              market::ParseMarketCsv("date,open,close\n2020-01-02,1,1\n2020-01-02,2,2\n", "X", &w);
            }),
            ErrorCode::kDuplicateDate);
  try {
    market::ParseMarketCsv("date,open,close\n2020-01-02,1,1\n2020-01-03,abc,1\n", "X", &w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(CodeOf([&] { market::ParseMarketCsv("date,close\n2020-01-02,1\n", "X", &w); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] { market::LoadMarketCsv("/nonexistent/SPY.csv", &w); }), ErrorCode::kIo);
}

TEST(LoadMarket, UnsortedRowsAreSortedWithWarning) {
  Warnings w;
  auto s = market::ParseMarketCsv("date,open,close\n2020-01-03,2,2\n2020-01-02,1,1\n", "X", &w);
  EXPECT_EQ(s.rows[0].date, Date::Parse("2020-01-02"));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].code, "UnsortedRows");
}

TEST(LoadControls, ParsesAndValidates) {
  Warnings w;
  auto c = market::ParseControlsCsv(
      "date,ffr_shock,fg_shock,ap_shock,shadow_rate\n2020-01-29,0.1,-0.2,0,-1.5\n", &w);
  ASSERT_EQ(c.rows.size(), 1u);
  EXPECT_EQ(c.rows[0].shadow_rate, -1.5);
  EXPECT_EQ(CodeOf([&] { market::ParseControlsCsv("date,ffr_shock\n", &w); }), ErrorCode::kParse);
}

TEST(Anchor, Examples) {
  auto s = Weekdays(10);  // 2020-01-06 .. 2020-01-17
  Warnings w;
  EXPECT_EQ(market::AnchorEvent(s, Date::Parse("2020-01-08"), &w), Date::Parse("2020-01-08"));
  EXPECT_TRUE(w.empty());
  EXPECT_EQ(market::AnchorEvent(s, Date::Parse("2020-01-11"), &w), Date::Parse("2020-01-13"));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].code, "NonTradingDay");
  EXPECT_EQ(CodeOf([&] { market::AnchorEvent(s, Date::Parse("2020-01-18"), &w); }),
            ErrorCode::kNoAnchor);
}

TEST(Outcome, Examples) {
  MarketSeries s{"X",
                 {{Date::Parse("2020-01-06"), 100.0, 101.0},
                  {Date::Parse("2020-01-07"), 102.0, 105.0},
                  {Date::Parse("2020-01-08"), 400.0, 400.0}}};
  EXPECT_NEAR(market::ComputeOutcome(s, Date::Parse("2020-01-06"), 1), 0.0487902, 1e-7);
  EXPECT_EQ(market::ComputeOutcome(s, Date::Parse("2020-01-06"), 1), std::log(105.0) - std::log(100.0));
  EXPECT_EQ(market::ComputeOutcome(s, Date::Parse("2020-01-08"), 0), 0.0);
  EXPECT_EQ(CodeOf([&] { market::ComputeOutcome(s, Date::Parse("2020-01-08"), 1); }),
            ErrorCode::kInsufficientHorizon);
}

TEST(Outcome, ScalingInvarianceAndTelescoping) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto s = Weekdays(40, seed);
    auto scaled = s;
    const double c = 0.5 + static_cast<double>(seed) * 3.7;
    for (auto& r : scaled.rows) {
      r.open *= c;
      r.close *= c;
    }
    const Date anchor = s.rows[seed % 10].date;
    for (int h = 0; h <= 15; ++h) {
      const double y = market::ComputeOutcome(s, anchor, h);
      EXPECT_NEAR(market::ComputeOutcome(scaled, anchor, h), y, 1e-12);
      if (h > 0) {
        const std::size_t i = market::AnchorIndex(s, anchor) + static_cast<std::size_t>(h);
        const double step = std::log(s.rows[i].close / s.rows[i - 1].close);
        EXPECT_NEAR(y, market::ComputeOutcome(s, anchor, h - 1) + step, 1e-12);
      }
    }
  }
}

TEST(Panel, FullAndTruncated) {
  auto s = Weekdays(60);
  std::vector<EventRef> events = {{"A", s.rows[3].date}, {"B", s.rows[54].date}};
  Warnings w;
  auto panel = market::BuildOutcomePanel(s, events, 15, &w);
  std::size_t a = 0, b = 0;
  for (const auto& r : panel.rows) (r.event_id == "A" ? a : b)++;
  EXPECT_EQ(a, 16u);
  EXPECT_EQ(b, 6u);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].code, "TruncatedHorizon");
  EXPECT_TRUE(market::BuildOutcomePanel(s, {}, 15, &w).rows.empty());
}

TEST(Panel, NoAnchorEventsAreDropped) {
  auto s = Weekdays(20);
  Warnings w;
  auto panel = market::BuildOutcomePanel(s, {{"Z", Date::Parse("2030-01-01")}}, 5, &w);
  EXPECT_TRUE(panel.rows.empty());
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].code, "NoAnchor");
}

TEST(Panel, StageFileRoundTrip) {
  auto s = Weekdays(40);
  Warnings w;
  auto panel = market::BuildOutcomePanel(s, {{"A", s.rows[2].date}, {"B", s.rows[30].date}}, 15, &w);
  auto text = market::SerializeOutcomePanel(panel);
  auto back = market::ParseOutcomePanel(text, "SPY");
  ASSERT_EQ(back.rows.size(), panel.rows.size());
  for (std::size_t i = 0; i < panel.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].outcome, panel.rows[i].outcome);
    EXPECT_EQ(back.rows[i].anchor_date, panel.rows[i].anchor_date);
  }
  EXPECT_EQ(market::SerializeOutcomePanel(back), text);
}

TEST(Controls, SevenDayRule) {
  ControlSeries c{{{Date::Parse("2020-01-29"), 0.1, 0.2, 0.3, 1.0},
                   {Date::Parse("2020-03-10"), 0.4, 0.5, 0.6, 0.5}}};
  std::vector<EventRef> events = {{"exact", Date::Parse("2020-01-29")},
                                  {"forward", Date::Parse("2020-03-03")},
                                  {"stale", Date::Parse("2020-02-01")}};
  Warnings w;
  auto joined = market::JoinControls(events, c, &w);
  ASSERT_EQ(joined.size(), 2u);
  EXPECT_EQ(joined[0].event_id, "exact");
  EXPECT_EQ(joined[0].values.ffr_shock, 0.1);
  EXPECT_EQ(joined[1].event_id, "forward");
  EXPECT_EQ(joined[1].control_date, Date::Parse("2020-03-10"));
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0].code, "ForwardMatchedControls");
  EXPECT_EQ(w[1].code, "UnmatchedControls");
  auto text = market::SerializeEventControls(joined);
  EXPECT_EQ(market::SerializeEventControls(market::ParseEventControls(text)), text);
}

TEST(Controls, EightDayGapIsDropped) {
  ControlSeries c{{{Date::Parse("2020-03-10"), 0, 0, 0, 0}}};
  Warnings w;
  EXPECT_TRUE(market::JoinControls({{"e", Date::Parse("2020-03-02")}}, c, &w).empty());
  EXPECT_EQ(market::JoinControls({{"e", Date::Parse("2020-03-03")}}, c, &w).size(), 1u);
}

}  // namespace
}  // namespace stancelp
