#include "xbicorr/prewhiten.hpp"

#include "xbicorr/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xbicorr {

namespace {

// Design rows t = start .. T-1 with columns {1, x lags 1..p} and, for the
// bivariate case, {y lags 1..p} and optionally contemporaneous x.
linalg::Matrix ar_design(std::span<const double> x, int p, int start) {
    const std::size_t T = x.size();
    const std::size_t rows = T - static_cast<std::size_t>(start);
    linalg::Matrix X(rows, static_cast<std::size_t>(p) + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t t = static_cast<std::size_t>(start) + i;
        X(i, 0) = 1.0;
        for (int j = 1; j <= p; ++j) X(i, static_cast<std::size_t>(j)) = x[t - j];
    }
    return X;
}

linalg::Matrix var_design(std::span<const double> x, std::span<const double> y,
                          int p, int start, bool with_contemporaneous_x) {
    const std::size_t T = x.size();
    const std::size_t rows = T - static_cast<std::size_t>(start);
    const std::size_t cols = 1 + 2 * static_cast<std::size_t>(p) +
                             (with_contemporaneous_x ? 1 : 0);
    linalg::Matrix X(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t t = static_cast<std::size_t>(start) + i;
        std::size_t col = 0;
        X(i, col++) = 1.0;
        for (int j = 1; j <= p; ++j) X(i, col++) = x[t - j];
        for (int j = 1; j <= p; ++j) X(i, col++) = y[t - j];
        if (with_contemporaneous_x) X(i, col++) = x[t];
    }
    return X;
}

int checked_start(std::size_t T, int p, std::optional<int> start, const char* what) {
    if (p < 0) throw std::invalid_argument(std::string(what) + ": order must be non-negative");
    const int s0 = start.value_or(p);
    if (s0 < p) throw std::invalid_argument(std::string(what) + ": start below order");
    if (T <= static_cast<std::size_t>(s0) + 1)
        throw std::invalid_argument(std::string(what) + ": series too short");
    return s0;
}

double mean_square(std::span<const double> v) {
    double ss = 0.0;
    for (double e : v) ss += e * e;
    return ss / static_cast<double>(v.size());
}

}  // namespace

ArFit fit_ar(std::span<const double> series, int p, std::optional<int> start) {
    const std::size_t T = series.size();
    if (T <= static_cast<std::size_t>(std::max(p, 0)) + 1)
        throw std::invalid_argument("fit_ar: series too short");
    const int s0 = checked_start(T, p, start, "fit_ar");

    const auto X = ar_design(series, p, s0);
    std::vector<double> target(series.begin() + s0, series.end());
    auto fit = linalg::ols(X, target);

    ArFit out;
    out.order = p;
    out.intercept = fit.coefficients[0];
    out.coefficients.assign(fit.coefficients.begin() + 1, fit.coefficients.end());
    out.residuals = std::move(fit.residuals);
    out.sigma2 = mean_square(out.residuals);
    const double m = static_cast<double>(out.residuals.size());
    out.bic = std::log(out.sigma2) + (static_cast<double>(p) + 1.0) * std::log(m) / m;
    return out;
}

VarFit fit_var(std::span<const double> x, std::span<const double> y, int p,
               bool contemporaneous, std::optional<int> start) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_var: length mismatch");
    const std::size_t T = x.size();
    if (T <= static_cast<std::size_t>(std::max(p, 0)) + 2)
        throw std::invalid_argument("fit_var: series too short");
    const int s0 = checked_start(T, p, start, "fit_var");

    const auto Xx = var_design(x, y, p, s0, false);
    const auto Xy = var_design(x, y, p, s0, contemporaneous);
    std::vector<double> tx(x.begin() + s0, x.end());
    std::vector<double> ty(y.begin() + s0, y.end());
    auto fx = linalg::ols(Xx, tx);
    auto fy = linalg::ols(Xy, ty);

    VarFit out;
    out.order = p;
    out.contemporaneous = contemporaneous;

    const auto unpack = [p](const std::vector<double>& beta, bool contemp) {
        VarEquation eq;
        std::size_t col = 0;
        eq.intercept = beta[col++];
        eq.x_lag_coefficients.assign(beta.begin() + 1, beta.begin() + 1 + p);
        col += static_cast<std::size_t>(p);
        eq.y_lag_coefficients.assign(beta.begin() + col, beta.begin() + col + p);
        col += static_cast<std::size_t>(p);
        if (contemp) eq.contemporaneous_x = beta[col];
        return eq;
    };
    out.eq_x = unpack(fx.coefficients, false);
    out.eq_y = unpack(fy.coefficients, contemporaneous);
    out.residuals_x = std::move(fx.residuals);
    out.residuals_y = std::move(fy.residuals);

    const double m = static_cast<double>(out.residuals_x.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < out.residuals_x.size(); ++i) {
        sxx += out.residuals_x[i] * out.residuals_x[i];
        sxy += out.residuals_x[i] * out.residuals_y[i];
        syy += out.residuals_y[i] * out.residuals_y[i];
    }
    sxx /= m;
    sxy /= m;
    syy /= m;
    const double det = sxx * syy - sxy * sxy;
    const double k = 2.0 + 4.0 * static_cast<double>(p) + (contemporaneous ? 1.0 : 0.0);
    out.bic = (det > 0.0 ? std::log(det) : -std::numeric_limits<double>::infinity()) +
              k * std::log(m) / m;
    return out;
}

int select_order_bic(std::span<const double> series, int p_max) {
    if (p_max < 0) throw std::invalid_argument("select_order_bic: p_max must be non-negative");
    if (series.size() <= static_cast<std::size_t>(p_max) + 2)
        throw std::invalid_argument("select_order_bic: p_max too large for series length");
    int best = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= p_max; ++p) {
        const double bic = fit_ar(series, p, p_max).bic;
        if (bic < best_bic) {
            best_bic = bic;
            best = p;
        }
    }
    return best;
}

int select_order_bic(std::span<const double> x, std::span<const double> y, int p_max,
                     bool contemporaneous) {
    if (p_max < 0) throw std::invalid_argument("select_order_bic: p_max must be non-negative");
    if (x.size() != y.size()) throw std::invalid_argument("select_order_bic: length mismatch");
    if (x.size() <= static_cast<std::size_t>(p_max) + 2)
        throw std::invalid_argument("select_order_bic: p_max too large for series length");
    int best = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= p_max; ++p) {
        const double bic = fit_var(x, y, p, contemporaneous, p_max).bic;
        if (bic < best_bic) {
            best_bic = bic;
            best = p;
        }
    }
    return best;
}

}  // namespace xbicorr
