#include "stancelp/ols.hpp"

#include <algorithm>
#include <cmath>

#include "stancelp/error.hpp"

namespace stancelp::ols {

OlsFit Fit(const Matrix& design, std::span<const double> y,
           const std::vector<std::string>& column_names) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  if (y.size() != n) throw Error(ErrorCode::kInternal, "design and outcome lengths differ");
  if (n < k || k == 0) {
    throw Error(ErrorCode::kInsufficientSample, "need at least " + std::to_string(k) +
                                                    " rows, have " + std::to_string(n));
  }

  // Factor in place: after column j, a(j..n, j) holds the Householder vector
  // and diag[j] the pivot R(j, j).
  Matrix a = design;
  std::vector<double> qty(y.begin(), y.end());
  std::vector<double> diag(k);
  for (std::size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < n; ++i) norm = std::hypot(norm, a(i, j));
    const double alpha = a(j, j) > 0 ? -norm : norm;
    diag[j] = alpha;
    if (norm == 0.0) continue;
    a(j, j) -= alpha;
    // v = a(j.., j); H = I - 2 v v' / (v' v), with v'v = -2 alpha v_0.
    const double vtv = -alpha * a(j, j);
    for (std::size_t c = j + 1; c < k; ++c) {
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += a(i, j) * a(i, c);
      const double f = dot / vtv;
      for (std::size_t i = j; i < n; ++i) a(i, c) -= f * a(i, j);
    }
    double dot = 0.0;
    for (std::size_t i = j; i < n; ++i) dot += a(i, j) * qty[i];
    const double f = dot / vtv;
    for (std::size_t i = j; i < n; ++i) qty[i] -= f * a(i, j);
  }

  double largest = 0.0;
  for (double d : diag) largest = std::max(largest, std::abs(d));
  for (std::size_t j = 0; j < k; ++j) {
    if (largest == 0.0 || std::abs(diag[j]) < kRankTolerance * largest) {
      const std::string name = j < column_names.size() ? column_names[j] : "column " + std::to_string(j);
      throw Error(ErrorCode::kCollinearDesign,
                  "design is rank deficient at column '" + name + "'", {name});
    }
  }

  OlsFit fit;
  fit.coefficients.assign(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double sum = qty[jj];
    for (std::size_t c = jj + 1; c < k; ++c) sum -= a(jj, c) * fit.coefficients[c];
    fit.coefficients[jj] = sum / diag[jj];
  }

  fit.residuals.resize(n);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double ssr = 0.0;
  double sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t c = 0; c < k; ++c) fitted += design(i, c) * fit.coefficients[c];
    fit.residuals[i] = y[i] - fitted;
    ssr += fit.residuals[i] * fit.residuals[i];
    sst += (y[i] - mean) * (y[i] - mean);
  }
  // A constant outcome is fit exactly by the intercept.
  fit.r_squared = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 1.0;
  return fit;
}

Matrix WithIntercept(const Matrix& regressors) {
  Matrix out(regressors.rows(), regressors.cols() + 1);
  for (std::size_t r = 0; r < regressors.rows(); ++r) {
    out(r, 0) = 1.0;
    for (std::size_t c = 0; c < regressors.cols(); ++c) out(r, c + 1) = regressors(r, c);
  }
  return out;
}

std::vector<double> TransposeTimes(const Matrix& design, std::span<const double> v) {
  std::vector<double> out(design.cols(), 0.0);
  for (std::size_t r = 0; r < design.rows(); ++r) {
    for (std::size_t c = 0; c < design.cols(); ++c) out[c] += design(r, c) * v[r];
  }
  return out;
}

}  // namespace stancelp::ols
