#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "stancelp/error.hpp"
#include "stancelp/ols.hpp"
#include "support/oracles.hpp"

namespace stancelp {
namespace {

std::vector<std::string> Names(std::size_t k) {
  std::vector<std::string> names = {"intercept"};
  for (std::size_t i = 1; i < k; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

TEST(Ols, ExactFitTwoPoints) {
  Matrix x(2, 1);
  x(0, 0) = 0;
  x(1, 0) = 1;
  std::vector<double> y = {1, 3};
  auto fit = ols::Fit(ols::WithIntercept(x), y, Names(2));
  EXPECT_NEAR(fit.coefficients[0], 1.0, 1e-12);
  EXPECT_NEAR(fit.coefficients[1], 2.0, 1e-12);
  EXPECT_EQ(fit.r_squared, 1.0);
}

TEST(Ols, ConstantOutcome) {
  auto p = oracle::MakeRandomProblem(30, 3, 4);
  std::fill(p.y.begin(), p.y.end(), 2.5);
  auto fit = ols::Fit(p.x, p.y, Names(4));
  EXPECT_NEAR(fit.coefficients[0], 2.5, 1e-12);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(fit.coefficients[i], 0.0, 1e-12);
  EXPECT_EQ(fit.r_squared, 1.0);
}

TEST(Ols, MatchesNormalEquationsOracle) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto p = oracle::MakeRandomProblem(20, 4, seed);
    auto fit = ols::Fit(p.x, p.y, Names(5));
    auto want = oracle::NormalEquations(p.x, p.y);
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_NEAR(fit.coefficients[i], want[i], 1e-8) << "seed " << seed << " coef " << i;
    }
    EXPECT_GE(fit.r_squared, 0.0);
    EXPECT_LE(fit.r_squared, 1.0);
  }
}

TEST(Ols, ResidualsOrthogonalToDesign) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto p = oracle::MakeRandomProblem(10 + seed * 3, 5, seed);
    auto fit = ols::Fit(p.x, p.y, Names(6));
    auto xte = ols::TransposeTimes(p.x, fit.residuals);
    EXPECT_LT(oracle::MaxAbs(xte), oracle::OrthogonalityBound(p.x, p.y));
  }
}

TEST(Ols, InterceptShift) {
  auto p = oracle::MakeRandomProblem(40, 5, 8);
  auto base = ols::Fit(p.x, p.y, Names(6));
  const double c = 3.25;
  for (double& v : p.y) v += c;
  auto shifted = ols::Fit(p.x, p.y, Names(6));
  EXPECT_NEAR(shifted.coefficients[0], base.coefficients[0] + c, 1e-10);
  for (std::size_t i = 1; i < 6; ++i) {
    EXPECT_NEAR(shifted.coefficients[i], base.coefficients[i], 1e-10);
  }
}

TEST(Ols, RegressorScaling) {
  auto p = oracle::MakeRandomProblem(40, 5, 9);
  auto base = ols::Fit(p.x, p.y, Names(6));
  const double s = -7.5;
  for (std::size_t r = 0; r < p.x.rows(); ++r) p.x(r, 1) *= s;
  auto scaled = ols::Fit(p.x, p.y, Names(6));
  EXPECT_NEAR(scaled.coefficients[1], base.coefficients[1] / s, 1e-10);
  for (std::size_t r = 0; r < p.x.rows(); ++r) {
    EXPECT_NEAR(scaled.residuals[r], base.residuals[r], 1e-10);
  }
}

TEST(Ols, CollinearColumnIsNamed) {
  auto p = oracle::MakeRandomProblem(25, 3, 3);
  for (std::size_t r = 0; r < p.x.rows(); ++r) p.x(r, 3) = 2.0 * p.x(r, 1) - p.x(r, 2);
  try {
    ols::Fit(p.x, p.y, {"intercept", "a", "b", "combo"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCollinearDesign);
    EXPECT_NE(std::string(e.what()).find("combo"), std::string::npos) << e.what();
  }
}

TEST(Ols, ConstantRegressorCollidesWithIntercept) {
  auto p = oracle::MakeRandomProblem(25, 2, 3);
  for (std::size_t r = 0; r < p.x.rows(); ++r) p.x(r, 2) = 4.0;
  try {
    ols::Fit(p.x, p.y, {"intercept", "a", "flat"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCollinearDesign);
    EXPECT_NE(std::string(e.what()).find("flat"), std::string::npos);
  }
}

TEST(Ols, TooFewRows) {
  auto p = oracle::MakeRandomProblem(3, 4, 1);
  try {
    ols::Fit(p.x, p.y, Names(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientSample);
  }
}

}  // namespace
}  // namespace stancelp
