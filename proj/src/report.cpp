#include "stancelp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <tuple>

#include "stancelp/io.hpp"

namespace stancelp::report {

namespace {

double Round(double value) {
  double out = 0.0;
  io::ParseDouble(io::FormatSignificant(value, kIrfDigits), &out);
  return out;
}

std::string Fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string EscapeXml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

IrfTable MakeIrfTable(const std::vector<LPResult>& results, std::string ticker,
                      IndicatorKind kind, Granularity granularity) {
  IrfTable table{kind, granularity, std::move(ticker), {}};
  for (const LPResult& r : results) {
    const std::size_t t = r.target_index;
    table.rows.push_back(IrfRow{r.horizon, Round(r.coefficients[t]), Round(r.ci_low[t]),
                                Round(r.ci_high[t]), r.n});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const IrfRow& a, const IrfRow& b) { return a.horizon < b.horizon; });
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].horizon == table.rows[i - 1].horizon) {
      throw Error(ErrorCode::kInternal, "duplicate horizon in impulse response");
    }
  }
  return table;
}

std::string SerializeIrfCsv(const IrfTable& table) {
  std::string out = "horizon,coef,ci_low,ci_high,n\n";
  for (const IrfRow& row : table.rows) {
    out += std::to_string(row.horizon) + ',' + io::FormatSignificant(row.coef, kIrfDigits) + ',' +
           io::FormatSignificant(row.ci_low, kIrfDigits) + ',' +
           io::FormatSignificant(row.ci_high, kIrfDigits) + ',' + std::to_string(row.n) + '\n';
  }
  return out;
}

IrfTable ParseIrfCsv(std::string_view text, std::string ticker, IndicatorKind kind,
                     Granularity granularity) {
  const std::vector<std::string_view> lines = io::SplitLines(text);
  if (lines.empty() || lines[0] != "horizon,coef,ci_low,ci_high,n") {
    throw Error(ErrorCode::kParse, "impulse response CSV: unexpected header");
  }
  IrfTable table{kind, granularity, std::move(ticker), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = io::SplitCsvRow(lines[i]);
    IrfRow row;
    long long h = 0, n = 0;
    if (f.size() != 5 || !io::ParseInt(f[0], &h) || !io::ParseDouble(f[1], &row.coef) ||
        !io::ParseDouble(f[2], &row.ci_low) || !io::ParseDouble(f[3], &row.ci_high) ||
        !io::ParseInt(f[4], &n) || h < 0 || n < 0) {
      throw Error(ErrorCode::kParse,
                  "impulse response CSV line " + std::to_string(i + 1) + " malformed",
                  {"line " + std::to_string(i + 1)});
    }
    row.horizon = static_cast<int>(h);
    row.n = static_cast<std::size_t>(n);
    table.rows.push_back(row);
  }
  return table;
}

std::string IrfStem(std::string_view ticker, IndicatorKind kind, Granularity granularity) {
  return std::string(ticker) + "_" + std::string(ToString(kind)) + "_" +
         std::string(ToString(granularity));
}

std::string EmitIrfSvg(const IrfTable& table) {
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  int h_min = 0, h_max = 0;
  double y_min = 0.0, y_max = 0.0;
  if (!table.rows.empty()) {
    h_min = table.rows.front().horizon;
    h_max = table.rows.back().horizon;
  }
  for (const IrfRow& r : table.rows) {
    y_min = std::min({y_min, r.coef, r.ci_low, r.ci_high});
    y_max = std::max({y_max, r.coef, r.ci_low, r.ci_high});
  }
  if (y_max - y_min == 0.0) {
    y_min -= 1.0;
    y_max += 1.0;
  } else {
    const double pad = 0.1 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }
  auto px = [&](int h) {
    if (h_max == h_min) return kLeft + plot_w / 2;
    return kLeft + plot_w * (h - h_min) / static_cast<double>(h_max - h_min);
  };
  auto py = [&](double v) { return kTop + plot_h * (y_max - v) / (y_max - y_min); };
  auto polyline = [&](auto value, const char* cls, const char* extra) {
    std::string pts;
    for (const IrfRow& r : table.rows) {
      if (!pts.empty()) pts += ' ';
      pts += Fixed(px(r.horizon)) + ',' + Fixed(py(value(r)));
    }
    return std::string("  <polyline class=\"") + cls + "\" fill=\"none\" " + extra +
           " points=\"" + pts + "\"/>\n";
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  svg += "  <text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         EscapeXml("Response of " + table.ticker + " to " + std::string(ToString(table.kind)) +
                   " (" + std::string(ToString(table.granularity)) + ")") +
         "</text>\n";
  svg += "  <rect class=\"frame\" x=\"" + Fixed(kLeft) + "\" y=\"" + Fixed(kTop) + "\" width=\"" +
         Fixed(plot_w) + "\" height=\"" + Fixed(plot_h) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (int h = h_min; h <= h_max; ++h) {
    svg += "  <text x=\"" + Fixed(px(h)) + "\" y=\"" + Fixed(kTop + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(h) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = y_min + (y_max - y_min) * i / 4.0;
    svg += "  <text x=\"" + Fixed(kLeft - 8) + "\" y=\"" + Fixed(py(v) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           io::FormatSignificant(v, 4) + "</text>\n";
  }
  svg += "  <text x=\"400\" y=\"" + Fixed(kHeight - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">horizon "
         "(trading days)</text>\n";
  svg += "  <line class=\"zero\" x1=\"" + Fixed(kLeft) + "\" y1=\"" + Fixed(py(0.0)) +
         "\" x2=\"" + Fixed(kLeft + plot_w) + "\" y2=\"" + Fixed(py(0.0)) +
         "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  svg += polyline([](const IrfRow& r) { return r.ci_low; }, "ci-low",
                  "stroke=\"#1f77b4\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
  svg += polyline([](const IrfRow& r) { return r.ci_high; }, "ci-high",
                  "stroke=\"#1f77b4\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
  svg += polyline([](const IrfRow& r) { return r.coef; }, "coef",
                  "stroke=\"#d62728\" stroke-width=\"2\"");
  svg += "</svg>\n";
  return svg;
}

std::string EmitIndicatorComparison(const std::vector<IndicatorPoint>& series_a,
                                    const std::vector<IndicatorPoint>& series_b) {
  struct Row {
    Date date;
    std::string a;
    std::string b;
  };
  std::map<std::string, Row> rows;
  for (const IndicatorPoint& p : series_a) {
    Row& row = rows[p.event_id];
    row.date = p.event_date;
    if (p.score) row.a = io::FormatExact(*p.score);
  }
  for (const IndicatorPoint& p : series_b) {
    auto [it, inserted] = rows.try_emplace(p.event_id);
    if (inserted) it->second.date = p.event_date;
    if (p.score) it->second.b = io::FormatExact(*p.score);
  }
  std::vector<std::pair<std::string, Row>> ordered(rows.begin(), rows.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second.date, x.first) < std::tie(y.second.date, y.first);
  });
  std::string out = "date,event_id,score_a,score_b\n";
  for (const auto& [id, row] : ordered) {
    out += row.date.ToString() + ',' + io::CsvField(id) + ',' + row.a + ',' + row.b + '\n';
  }
  return out;
}

std::string SerializeLocalProjection(const LocalProjection& lp, std::string_view ticker,
                                     IndicatorKind kind, Granularity granularity) {
  using Json = nlohmann::ordered_json;
  auto drops = [](const DropCounts& d) {
    Json j;
    j["missing_score"] = d.missing_score;
    j["missing_outcome"] = d.missing_outcome;
    j["missing_controls"] = d.missing_controls;
    return j;
  };
  Json doc;
  doc["ticker"] = ticker;
  doc["kind"] = ToString(kind);
  doc["granularity"] = ToString(granularity);
  doc["columns"] = LpColumnNames();
  Json results = Json::array();
  for (const LPResult& r : lp.results) {
    Json j;
    j["horizon"] = r.horizon;
    j["target_index"] = r.target_index;
    j["coefficients"] = r.coefficients;
    j["se"] = r.se;
    j["ci_low"] = r.ci_low;
    j["ci_high"] = r.ci_high;
    j["n"] = r.n;
    j["r_squared"] = r.r_squared;
    j["bootstrap_reps"] = r.bootstrap_reps;
    j["seed"] = r.seed;
    j["drops"] = drops(r.drops);
    results.push_back(std::move(j));
  }
  doc["results"] = std::move(results);
  Json infeasible = Json::array();
  for (const InfeasibleHorizon& h : lp.infeasible) {
    Json j;
    j["horizon"] = h.horizon;
    j["reason"] = h.reason;
    j["drops"] = drops(h.drops);
    infeasible.push_back(std::move(j));
  }
  doc["infeasible"] = std::move(infeasible);
  return doc.dump(2) + "\n";
}

}  // namespace stancelp::report
