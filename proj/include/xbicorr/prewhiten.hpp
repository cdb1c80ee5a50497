#pragma once

#include <optional>
#include <span>
#include <vector>

namespace xbicorr {

/// OLS autoregression fit. residuals has length T - start where start
/// defaults to the order p; sigma2 is the mean squared residual.
struct ArFit {
    int order = 0;
    double intercept = 0.0;
    std::vector<double> coefficients;  ///< lag 1..p
    std::vector<double> residuals;
    double sigma2 = 0.0;
    double bic = 0.0;
};

/// One equation of a bivariate VAR: intercept, p coefficients on lagged x,
/// p on lagged y, and (for the target equation only) a coefficient on
/// contemporaneous x.
struct VarEquation {
    double intercept = 0.0;
    std::vector<double> x_lag_coefficients;
    std::vector<double> y_lag_coefficients;
    double contemporaneous_x = 0.0;
};

struct VarFit {
    int order = 0;
    bool contemporaneous = false;
    VarEquation eq_x;  ///< x_t on {1, lags of x and y}
    VarEquation eq_y;  ///< y_t on {1, lags of x and y, x_t when enabled}
    std::vector<double> residuals_x;
    std::vector<double> residuals_y;
    double bic = 0.0;
};

/// Fits x_t = a + phi_1 x_{t-1} + ... + phi_p x_{t-p} + e_t by OLS.
///
/// Rows start at index `start` (default p, the first usable row); passing a
/// larger start fits on a reduced common sample, which is how BIC candidates
/// of different orders are made comparable. p = 0 reduces to the demeaned
/// series.
[[nodiscard]] ArFit fit_ar(std::span<const double> series, int p,
                           std::optional<int> start = {});

/// Equation-by-equation OLS for a bivariate VAR(p). When `contemporaneous`
/// is set, the y equation additionally regresses on x_t so that
/// contemporaneous correlation is absorbed into the fit rather than left in
/// the residuals.
[[nodiscard]] VarFit fit_var(std::span<const double> x, std::span<const double> y,
                             int p, bool contemporaneous,
                             std::optional<int> start = {});

/// argmin over p in {0..p_max} of BIC(p) = ln(sigma2_p) + (p+1) ln(m)/m,
/// all candidates fit on the common sample starting at p_max.
[[nodiscard]] int select_order_bic(std::span<const double> series, int p_max);

/// Bivariate variant: BIC(p) = ln det(Sigma_p) + k_p ln(m)/m with k_p the
/// total number of estimated coefficients across both equations.
[[nodiscard]] int select_order_bic(std::span<const double> x,
                                   std::span<const double> y, int p_max,
                                   bool contemporaneous);

}  // namespace xbicorr
