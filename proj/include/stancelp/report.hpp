#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stancelp/lp.hpp"

namespace stancelp {

struct IrfRow {
  int horizon = 0;
  double coef = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;

  friend bool operator==(const IrfRow&, const IrfRow&) = default;
};

// Impulse response of one outcome to the indicator's coefficient.
struct IrfTable {
  IndicatorKind kind = IndicatorKind::kSentiment;
  Granularity granularity = Granularity::kFine;
  std::string ticker;
  std::vector<IrfRow> rows;  // sorted by horizon, unique

  friend bool operator==(const IrfTable&, const IrfTable&) = default;
};

namespace report {

inline constexpr int kIrfDigits = 10;

// Values are rounded to kIrfDigits significant digits so that the table and
// its CSV form are interchangeable.
IrfTable MakeIrfTable(const std::vector<LPResult>& results, std::string ticker,
                      IndicatorKind kind, Granularity granularity);

// Header horizon,coef,ci_low,ci_high,n; LF line endings.
std::string SerializeIrfCsv(const IrfTable& table);
// Rows only; metadata comes from the caller.
IrfTable ParseIrfCsv(std::string_view text, std::string ticker, IndicatorKind kind,
                     Granularity granularity);

// "<ticker>_<kind>_<granularity>" used for the irf/ and figures/ file names.
std::string IrfStem(std::string_view ticker, IndicatorKind kind, Granularity granularity);

// 800x500 line chart: solid coefficient line, dashed interval bounds, zero line.
std::string EmitIrfSvg(const IrfTable& table);

// Full outer join on event_id, sorted by (date, event_id).
// Header date,event_id,score_a,score_b; absent or missing scores are empty.
std::string EmitIndicatorComparison(const std::vector<IndicatorPoint>& series_a,
                                    const std::vector<IndicatorPoint>& series_b);

// Every coefficient, interval and drop count of a local projection run.
std::string SerializeLocalProjection(const LocalProjection& lp, std::string_view ticker,
                                     IndicatorKind kind, Granularity granularity);

}  // namespace report
}  // namespace stancelp
