#include "stancelp/lp.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <map>
#include <thread>

#include "stancelp/rng.hpp"

namespace stancelp {

const std::vector<std::string>& LpColumnNames() {
  static const std::vector<std::string> names = {"intercept", "sentiment",  "ffr_shock",
                                                 "fg_shock",  "ap_shock",   "shadow_rate"};
  return names;
}

Matrix RegressionDataset::Design() const {
  Matrix x(rows.size(), kLpCoefficients);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RegressionRow& r = rows[i];
    x(i, 0) = 1.0;
    x(i, 1) = r.sentiment;
    x(i, 2) = r.ffr_shock;
    x(i, 3) = r.fg_shock;
    x(i, 4) = r.ap_shock;
    x(i, 5) = r.shadow_rate;
  }
  return x;
}

std::vector<double> RegressionDataset::Outcomes() const {
  std::vector<double> y;
  y.reserve(rows.size());
  for (const RegressionRow& r : rows) y.push_back(r.outcome);
  return y;
}

namespace lp {

namespace {

constexpr int kMaxResampleAttempts = 64;
constexpr double kDegenerateSpread = 1e-12;

std::array<double, kLpCoefficients> ToArray(const std::vector<double>& v) {
  std::array<double, kLpCoefficients> out{};
  std::copy_n(v.begin(), kLpCoefficients, out.begin());
  return out;
}

void ValidateConfig(const BootstrapConfig& config) {
  if (config.reps < 100) {
    throw Error(ErrorCode::kInvalidConfig, "bootstrap reps must be >= 100", {"reps"});
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "alpha must lie in (0, 1)", {"alpha"});
  }
}

unsigned ThreadCount(const BootstrapConfig& config, int reps) {
  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max(1u, threads);
  return std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, reps / 50)));
}

}  // namespace

RegressionDataset AssembleDataset(const OutcomePanel& panel,
                                  const std::vector<IndicatorPoint>& indicators,
                                  const std::vector<EventControls>& controls, int horizon,
                                  DropCounts* drops) {
  std::map<std::string, double> outcome_at_h;
  for (const OutcomeRow& row : panel.rows) {
    if (row.horizon == horizon) outcome_at_h[row.event_id] = row.outcome;
  }
  std::map<std::string, const EventControls*> control_of;
  for (const EventControls& c : controls) control_of[c.event_id] = &c;

  DropCounts local;
  RegressionDataset dataset{horizon, {}};
  for (const IndicatorPoint& point : indicators) {
    if (!point.score) {
      ++local.missing_score;
      continue;
    }
    auto outcome = outcome_at_h.find(point.event_id);
    if (outcome == outcome_at_h.end()) {
      ++local.missing_outcome;
      continue;
    }
    auto control = control_of.find(point.event_id);
    if (control == control_of.end()) {
      ++local.missing_controls;
      continue;
    }
    const ControlRow& v = control->second->values;
    dataset.rows.push_back(RegressionRow{point.event_id, outcome->second, *point.score,
                                         v.ffr_shock, v.fg_shock, v.ap_shock, v.shadow_rate});
  }
  if (drops != nullptr) *drops = local;
  if (dataset.rows.size() < kMinLpRows) {
    throw Error(ErrorCode::kInsufficientSample,
                "horizon " + std::to_string(horizon) + ": " + std::to_string(dataset.rows.size()) +
                    " usable rows, need at least " + std::to_string(kMinLpRows),
                {"h=" + std::to_string(horizon)});
  }
  return dataset;
}

OlsFit FitDataset(const RegressionDataset& dataset) {
  const std::vector<double> y = dataset.Outcomes();
  return ols::Fit(dataset.Design(), y, LpColumnNames());
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double NormalQuantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double Percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::kInternal, "percentile of empty sample");
  p = std::clamp(p, 0.0, 1.0);
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

std::array<double, 3> BiasCorrectedInterval(std::vector<double> replicates, double estimate,
                                            double alpha) {
  std::sort(replicates.begin(), replicates.end());
  // A spread at rounding level means every resample reproduced the estimate.
  const double scale = std::max({1.0, std::fabs(replicates.front()), std::fabs(replicates.back())});
  if (replicates.back() - replicates.front() <= kDegenerateSpread * scale) {
    return {estimate, estimate, 0.0};
  }
  const double reps = static_cast<double>(replicates.size());
  const auto below = std::lower_bound(replicates.begin(), replicates.end(), estimate) -
                     replicates.begin();
  const double proportion =
      std::clamp(static_cast<double>(below) / reps, 1.0 / (reps + 1.0), reps / (reps + 1.0));
  const double z0 = NormalQuantile(proportion);
  const double z = NormalQuantile(1.0 - alpha / 2.0);
  return {Percentile(replicates, NormalCdf(2.0 * z0 - z)),
          Percentile(replicates, NormalCdf(2.0 * z0 + z)), z0};
}

BootstrapInterval BcBootstrapCi(const RegressionDataset& dataset,
                                const std::array<double, kLpCoefficients>& estimate,
                                const BootstrapConfig& config, std::uint64_t stream) {
  ValidateConfig(config);
  const std::size_t n = dataset.rows.size();
  const auto reps = static_cast<std::size_t>(config.reps);
  const Matrix design = dataset.Design();
  const std::vector<double> y = dataset.Outcomes();

  // replicates[c][r]
  std::vector<std::vector<double>> replicates(kLpCoefficients, std::vector<double>(reps));
  auto run = [&](std::size_t begin, std::size_t end) {
    Matrix x(n, kLpCoefficients);
    std::vector<double> yy(n);
    for (std::size_t r = begin; r < end; ++r) {
      for (int attempt = 0;; ++attempt) {
        KeyedRng rng({config.seed, stream, r, static_cast<std::uint64_t>(attempt)});
        for (std::size_t i = 0; i < n; ++i) {
          const auto pick = static_cast<std::size_t>(rng.Below(n));
          for (std::size_t c = 0; c < kLpCoefficients; ++c) x(i, c) = design(pick, c);
          yy[i] = y[pick];
        }
        try {
          const OlsFit fit = ols::Fit(x, yy, LpColumnNames());
          for (std::size_t c = 0; c < kLpCoefficients; ++c) replicates[c][r] = fit.coefficients[c];
          break;
        } catch (const Error& e) {
          // Resamples that repeat too few distinct rows are redrawn.
          if (e.code() != ErrorCode::kCollinearDesign || attempt + 1 >= kMaxResampleAttempts) {
            throw;
          }
        }
      }
    }
  };

  const unsigned threads = ThreadCount(config, config.reps);
  if (threads <= 1) {
    run(0, reps);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (reps + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(reps, begin + chunk);
        pool.emplace_back([&, t, begin, end] {
          try {
            run(begin, end);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  BootstrapInterval out;
  for (std::size_t c = 0; c < kLpCoefficients; ++c) {
    const std::vector<double>& v = replicates[c];
    double mean = 0.0;
    for (double b : v) mean += b;
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (double b : v) ss += (b - mean) * (b - mean);
    out.se[c] = std::sqrt(ss / static_cast<double>(reps - 1));
    const auto [low, high, z0] = BiasCorrectedInterval(v, estimate[c], config.alpha);
    out.ci_low[c] = low;
    out.ci_high[c] = high;
    out.z0[c] = z0;
  }
  return out;
}

BootstrapInterval BcBootstrapCi(const RegressionDataset& dataset, const BootstrapConfig& config) {
  ValidateConfig(config);
  const OlsFit fit = FitDataset(dataset);
  return BcBootstrapCi(dataset, ToArray(fit.coefficients), config,
                       static_cast<std::uint64_t>(dataset.horizon));
}

LocalProjection Estimate(const OutcomePanel& panel, const std::vector<IndicatorPoint>& indicators,
                         const std::vector<EventControls>& controls, int max_horizon,
                         const BootstrapConfig& config) {
  if (max_horizon < 0) {
    throw Error(ErrorCode::kInvalidConfig, "horizons must be >= 0", {"horizons"});
  }
  ValidateConfig(config);
  LocalProjection out;
  for (int h = 0; h <= max_horizon; ++h) {
    DropCounts drops;
    try {
      const RegressionDataset dataset = AssembleDataset(panel, indicators, controls, h, &drops);
      const OlsFit fit = FitDataset(dataset);
      LPResult result;
      result.horizon = h;
      result.coefficients = ToArray(fit.coefficients);
      result.n = dataset.rows.size();
      result.r_squared = fit.r_squared;
      result.bootstrap_reps = config.reps;
      result.seed = config.seed;
      result.drops = drops;
      const BootstrapInterval ci =
          BcBootstrapCi(dataset, result.coefficients, config, static_cast<std::uint64_t>(h));
      result.se = ci.se;
      result.ci_low = ci.ci_low;
      result.ci_high = ci.ci_high;
      out.results.push_back(result);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientSample && e.code() != ErrorCode::kCollinearDesign) {
        throw;
      }
      out.infeasible.push_back(InfeasibleHorizon{h, std::string(ErrorCodeName(e.code())) + ": " + e.what(), drops});
    }
  }
  if (out.results.empty()) {
    throw Error(ErrorCode::kNoEstimableHorizon,
                "no horizon in 0.." + std::to_string(max_horizon) + " could be estimated");
  }
  return out;
}

}  // namespace lp
}  // namespace stancelp
