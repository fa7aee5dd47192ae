#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stancelp/indicator.hpp"
#include "stancelp/market.hpp"
#include "stancelp/ols.hpp"

namespace stancelp {

// Intercept, sentiment, ffr_shock, fg_shock, ap_shock, shadow_rate.
inline constexpr std::size_t kLpCoefficients = 6;
inline constexpr std::size_t kSentimentIndex = 1;
inline constexpr std::size_t kMinLpRows = kLpCoefficients + 1;

const std::vector<std::string>& LpColumnNames();

struct RegressionRow {
  std::string event_id;
  double outcome = 0.0;
  double sentiment = 0.0;
  double ffr_shock = 0.0;
  double fg_shock = 0.0;
  double ap_shock = 0.0;
  double shadow_rate = 0.0;
};

struct RegressionDataset {
  int horizon = 0;
  std::vector<RegressionRow> rows;

  // n x 6 design including the intercept column.
  Matrix Design() const;
  std::vector<double> Outcomes() const;
};

// Why candidate events did not enter a horizon's regression.
struct DropCounts {
  std::size_t missing_score = 0;
  std::size_t missing_outcome = 0;
  std::size_t missing_controls = 0;

  friend bool operator==(const DropCounts&, const DropCounts&) = default;
};

struct BootstrapConfig {
  int reps = 2000;
  double alpha = 0.10;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct BootstrapInterval {
  std::array<double, kLpCoefficients> ci_low{};
  std::array<double, kLpCoefficients> ci_high{};
  std::array<double, kLpCoefficients> se{};  // std. dev. of the replicates
  std::array<double, kLpCoefficients> z0{};
};

struct LPResult {
  int horizon = 0;
  std::array<double, kLpCoefficients> coefficients{};
  std::size_t target_index = kSentimentIndex;
  std::array<double, kLpCoefficients> se{};
  std::array<double, kLpCoefficients> ci_low{};
  std::array<double, kLpCoefficients> ci_high{};
  std::size_t n = 0;
  double r_squared = 0.0;
  int bootstrap_reps = 0;
  std::uint64_t seed = 0;
  DropCounts drops;
};

struct InfeasibleHorizon {
  int horizon = 0;
  std::string reason;
  DropCounts drops;
};

struct LocalProjection {
  std::vector<LPResult> results;
  std::vector<InfeasibleHorizon> infeasible;
};

namespace lp {

// Candidate events are the indicator points. Throws kInsufficientSample
// when fewer than kMinLpRows rows survive.
RegressionDataset AssembleDataset(const OutcomePanel& panel,
                                  const std::vector<IndicatorPoint>& indicators,
                                  const std::vector<EventControls>& controls, int horizon,
                                  DropCounts* drops = nullptr);

OlsFit FitDataset(const RegressionDataset& dataset);

// Standard normal CDF and its inverse.
double NormalCdf(double x);
double NormalQuantile(double p);

// Linear interpolation between order statistics of sorted values, p in [0, 1].
double Percentile(const std::vector<double>& sorted, double p);

// Bias-corrected percentile interval from replicates of one coefficient.
// Returns {low, high, z0}.
std::array<double, 3> BiasCorrectedInterval(std::vector<double> replicates, double estimate,
                                            double alpha);

// Pairs bootstrap of every coefficient. Replicate r of `stream` draws from
// the stream keyed by (seed, stream, r), so results do not depend on the
// thread count. Throws kInvalidConfig for reps < 100 or alpha outside (0,1).
BootstrapInterval BcBootstrapCi(const RegressionDataset& dataset,
                                const std::array<double, kLpCoefficients>& estimate,
                                const BootstrapConfig& config, std::uint64_t stream);
BootstrapInterval BcBootstrapCi(const RegressionDataset& dataset, const BootstrapConfig& config);

// One regression per horizon 0..max_horizon. Throws kNoEstimableHorizon.
LocalProjection Estimate(const OutcomePanel& panel, const std::vector<IndicatorPoint>& indicators,
                         const std::vector<EventControls>& controls, int max_horizon,
                         const BootstrapConfig& config);

}  // namespace lp
}  // namespace stancelp
