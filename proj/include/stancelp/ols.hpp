#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stancelp {

// Dense row-major matrix, just enough for least squares.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> residuals;
  double r_squared = 0.0;
};

namespace ols {

// Pivot magnitudes below this fraction of the largest one mark a column as
// linearly dependent on its predecessors.
inline constexpr double kRankTolerance = 1e-10;

// Least squares by Householder QR of the design as given (no column is added;
// callers include the intercept column). Throws kCollinearDesign naming the
// first dependent column, or kInsufficientSample when rows < cols.
OlsFit Fit(const Matrix& design, std::span<const double> y,
           const std::vector<std::string>& column_names);

// Prepends a column of ones.
Matrix WithIntercept(const Matrix& regressors);

// X' e, used to check residual orthogonality.
std::vector<double> TransposeTimes(const Matrix& design, std::span<const double> v);

}  // namespace ols
}  // namespace stancelp
