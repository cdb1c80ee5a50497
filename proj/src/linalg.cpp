#include "xbicorr/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace xbicorr::linalg {

namespace {

double norm1(const Matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) col += std::fabs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

}  // namespace

Matrix invert(const Matrix& a, double rcond_min) {
    const std::size_t k = a.rows();
    if (k == 0 || a.cols() != k) throw std::invalid_argument("invert: matrix must be square");

    // Augmented [A | I], Gauss-Jordan with partial pivoting.
    Matrix w(k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) w(i, j) = a(i, j);
        w(i, k + i) = 1.0;
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t i = col + 1; i < k; ++i)
            if (std::fabs(w(i, col)) > std::fabs(w(pivot, col))) pivot = i;
        if (std::fabs(w(pivot, col)) < 1e-300) throw std::runtime_error("singular design");
        if (pivot != col)
            for (std::size_t j = 0; j < 2 * k; ++j) std::swap(w(pivot, j), w(col, j));
        const double inv_p = 1.0 / w(col, col);
        for (std::size_t j = 0; j < 2 * k; ++j) w(col, j) *= inv_p;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col) continue;
            const double f = w(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < 2 * k; ++j) w(i, j) -= f * w(col, j);
        }
    }
    Matrix inv(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) inv(i, j) = w(i, k + j);

    const double rcond = 1.0 / (norm1(a) * norm1(inv));
    if (!(rcond >= rcond_min)) throw std::runtime_error("singular design");
    return inv;
}

OlsFit ols(const Matrix& X, std::span<const double> y, double rcond_min) {
    const std::size_t n = X.rows();
    const std::size_t k = X.cols();
    if (n != y.size()) throw std::invalid_argument("ols: row count mismatch");
    if (k == 0 || n < k) throw std::runtime_error("singular design");

    Matrix xtx(k, k);
    std::vector<double> xty(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            const double xa = X(i, a);
            xty[a] += xa * y[i];
            for (std::size_t b = a; b < k; ++b) xtx(a, b) += xa * X(i, b);
        }
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < a; ++b) xtx(a, b) = xtx(b, a);

    const Matrix inv = invert(xtx, rcond_min);
    std::vector<double> beta(k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) beta[a] += inv(a, b) * xty[b];

    // One refinement step on the normal equations.
    std::vector<double> resid_ne(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        double ax = 0.0;
        for (std::size_t b = 0; b < k; ++b) ax += xtx(a, b) * beta[b];
        resid_ne[a] = xty[a] - ax;
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) beta[a] += inv(a, b) * resid_ne[b];

    OlsFit fit;
    fit.coefficients = std::move(beta);
    fit.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double yhat = 0.0;
        for (std::size_t a = 0; a < k; ++a) yhat += X(i, a) * fit.coefficients[a];
        fit.residuals[i] = y[i] - yhat;
    }
    return fit;
}

}  // namespace xbicorr::linalg
