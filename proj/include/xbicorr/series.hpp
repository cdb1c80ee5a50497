#pragma once

#include "xbicorr/date.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace xbicorr {

/// Dated closing prices for one index. Dates strictly increasing, closes
/// positive, both the same length (>= 2).
struct PriceSeries {
    std::string id;
    std::vector<Date> dates;
    std::vector<double> closes;
};

/// Percentage log returns. Each return carries the later date of its price
/// pair, so the series is one observation shorter than its source.
struct ReturnSeries {
    std::string id;
    std::vector<Date> dates;
    std::vector<double> values;
};

/// Moment summary for a return series. Kurtosis is raw (Gaussian -> 3),
/// skewness/kurtosis use population (divide-by-n) moment ratios and std_dev
/// uses the n-1 convention.
struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double jarque_bera = 0.0;
};

/// Checks the PriceSeries invariants; throws std::invalid_argument on the
/// first violation.
void validate(const PriceSeries& prices);

/// Continuously compounded percentage returns:
/// values[t] = 100 * (ln closes[t+1] - ln closes[t]).
[[nodiscard]] ReturnSeries to_log_returns(const PriceSeries& prices);

/// Summary statistics per the conventions documented on SummaryStats.
/// JB = (n/6) * (S^2 + (K-3)^2 / 4). Requires n >= 4 and non-zero variance.
[[nodiscard]] SummaryStats summary_stats(std::span<const double> values);

/// Rescales to sample mean 0 and sample standard deviation 1 (n-1
/// convention). Throws "degenerate window" on zero variance.
[[nodiscard]] std::vector<double> standardize(std::span<const double> values);

/// Pearson correlation coefficient, clamped into [-1, 1].
[[nodiscard]] double pearson_correlation(std::span<const double> x,
                                         std::span<const double> y);

[[nodiscard]] double mean_of(std::span<const double> values);

/// Sample variance with the n-1 convention.
[[nodiscard]] double sample_variance(std::span<const double> values);

}  // namespace xbicorr
