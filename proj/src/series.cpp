#include "xbicorr/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xbicorr {

double mean_of(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("insufficient data: empty series");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("insufficient data: need at least 2 observations");
    const double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) {
        const double d = v - m;
        ss += d * d;
    }
    return ss / static_cast<double>(n - 1);
}

void validate(const PriceSeries& prices) {
    if (prices.dates.size() != prices.closes.size())
        throw std::invalid_argument("price series '" + prices.id +
                                    "': dates and closes differ in length");
    if (prices.closes.size() < 2)
        throw std::invalid_argument("price series '" + prices.id + "': insufficient data");
    for (std::size_t i = 0; i < prices.closes.size(); ++i) {
        if (!(prices.closes[i] > 0.0))
            throw std::invalid_argument("price series '" + prices.id +
                                        "': non-positive close at position " +
                                        std::to_string(i));
        if (i > 0 && !(prices.dates[i - 1] < prices.dates[i]))
            throw std::invalid_argument("price series '" + prices.id +
                                        "': dates not strictly increasing at position " +
                                        std::to_string(i));
    }
}

ReturnSeries to_log_returns(const PriceSeries& prices) {
    validate(prices);
    ReturnSeries out;
    out.id = prices.id;
    const std::size_t n = prices.closes.size();
    out.dates.reserve(n - 1);
    out.values.reserve(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        out.values.push_back(100.0 * (std::log(prices.closes[t + 1]) -
                                      std::log(prices.closes[t])));
        out.dates.push_back(prices.dates[t + 1]);
    }
    return out;
}

SummaryStats summary_stats(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) throw std::invalid_argument("insufficient data: need at least 4 observations");

    SummaryStats s;
    s.n = n;
    s.mean = mean_of(values);
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double dn = static_cast<double>(n);
    const double ss = m2;  // sum of squared deviations
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    if (m2 == 0.0) throw std::invalid_argument("degenerate series");

    s.std_dev = std::sqrt(ss / (dn - 1.0));
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);  // raw: Gaussian -> 3
    const double excess = s.kurtosis - 3.0;
    s.jarque_bera = dn / 6.0 * (s.skewness * s.skewness + excess * excess / 4.0);
    return s;
}

std::vector<double> standardize(std::span<const double> values) {
    if (values.size() < 2)
        throw std::invalid_argument("insufficient data: need at least 2 observations");
    const double m = mean_of(values);
    const double var = sample_variance(values);
    if (var == 0.0) throw std::invalid_argument("degenerate window");
    const double sd = std::sqrt(var);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - m) / sd;
    return out;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    if (x.size() < 2)
        throw std::invalid_argument("insufficient data: need at least 2 observations");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace xbicorr
