#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace xbicorr::linalg {

// Minimal row-major dense matrix. Everything here operates on small
// regression designs (at most a few dozen columns).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> residuals;
};

// Gauss-Jordan inverse with partial pivoting. Throws
// std::runtime_error("singular design") when the 1-norm reciprocal condition
// number of `a` falls below rcond_min.
[[nodiscard]] Matrix invert(const Matrix& a, double rcond_min);

// Least squares of y on the columns of X via normal equations, with one
// iterative refinement step to keep residuals orthogonal to the regressors.
[[nodiscard]] OlsFit ols(const Matrix& X, std::span<const double> y,
                         double rcond_min = 1e-12);

}  // namespace xbicorr::linalg
