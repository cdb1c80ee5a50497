#include "xbicorr/crossbicorr.hpp"

#include "xbicorr/parallel.hpp"
#include "xbicorr/prewhiten.hpp"
#include "xbicorr/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace xbicorr {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Residual variance this far below the input's marks the pair as collinear
// (the VAR absorbed the target completely).
constexpr double kCollinearVarianceRatio = 1e-12;

void check_standardized(std::span<const double> v, const char* what) {
    const double m = mean_of(v);
    const double sd = std::sqrt(sample_variance(v));
    if (std::fabs(m) > 1e-6 || std::fabs(sd - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(what) + ": input not standardized");
}

// Number of admissible summands for C_xxy(r, s): all t with t, t+r, t+s
// inside the window.
std::ptrdiff_t bicorr_count(std::size_t n, int r, int s) {
    const auto N = static_cast<std::ptrdiff_t>(n);
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -s);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(N - 1 - r, N - 1 - s);
    return hi - lo + 1;
}

int effective_p_max(std::size_t n, int p_max) {
    // The VAR target equation estimates 2p + 3 coefficients on n - p rows
    // once the common BIC sample is taken at p_max.
    const int cap = (static_cast<int>(n) - 4) / 3;
    return std::max(0, std::min(p_max, cap));
}

struct WindowOrders {
    int ar_x = 0;
    int ar_y = 0;
    int var = 0;
};

WindowOrders pick_orders(std::span<const double> zx, std::span<const double> zy,
                         const PrewhitenConfig& cfg) {
    WindowOrders o;
    if (cfg.mode == PrewhitenMode::fixed) {
        o.ar_x = o.ar_y = o.var = cfg.fixed_order;
        return o;
    }
    const int pm = effective_p_max(zx.size(), cfg.p_max);
    o.ar_x = select_order_bic(zx, pm);
    o.ar_y = select_order_bic(zy, pm);
    o.var = select_order_bic(zx, zy, pm, true);
    return o;
}

// Second-order stage: AR residuals of each series on a common start so both
// residual series cover the same dates, re-standardized for the statistic.
PortmanteauStat second_order_stat(std::span<const double> zx,
                                  std::span<const double> zy, int px, int py,
                                  int L) {
    const int s0 = std::max(px, py);
    if (static_cast<int>(zx.size()) - s0 <= L)
        throw std::invalid_argument("window too short after filtering");
    const auto rx = fit_ar(zx, px, s0).residuals;
    const auto ry = fit_ar(zy, py, s0).residuals;
    const auto sx = standardize(rx);
    const auto sy = standardize(ry);
    return h_xy(sx, sy, L);
}

// Third-order stage: VAR residuals with the contemporaneous x term in the y
// equation.
PortmanteauStat third_order_stat(std::span<const double> zx,
                                 std::span<const double> zy, int pv, int L) {
    if (static_cast<int>(zx.size()) - pv <= 2 * L)
        throw std::invalid_argument("window too short after filtering");
    if (std::fabs(pearson_correlation(zx, zy)) > 1.0 - 1e-12)
        throw std::invalid_argument("collinear pair");
    const auto vf = fit_var(zx, zy, pv, true);
    if (sample_variance(vf.residuals_y) <
        kCollinearVarianceRatio * sample_variance(zy))
        throw std::invalid_argument("collinear pair");
    const auto ex = standardize(vf.residuals_x);
    const auto ey = standardize(vf.residuals_y);
    return h_xxy(ex, ey, L);
}

WindowResult analyze_window(std::span<const double> x_raw,
                            std::span<const double> y_raw, int index_1based,
                            Date start_date, Date end_date,
                            const WindowSpec& spec,
                            const PrewhitenConfig& cfg) {
    const int L = spec.lag_depth;
    WindowResult w;
    w.window_index = index_1based;
    w.start_date = start_date;
    w.end_date = end_date;
    w.df_xy = L;
    w.df_xxy = L * (2 * L - 1);
    try {
        w.window_correlation = pearson_correlation(x_raw, y_raw);
        const auto zx = standardize(x_raw);
        const auto zy = standardize(y_raw);
        const auto orders = pick_orders(zx, zy, cfg);

        const auto second = second_order_stat(zx, zy, orders.ar_x, orders.ar_y, L);
        w.h_xy = second.statistic;
        w.p_xy = chi_square_sf(second.statistic, second.df);

        const auto third = third_order_stat(zx, zy, orders.var, L);
        w.h_xxy = third.statistic;
        w.p_xxy = chi_square_sf(third.statistic, third.df);
    } catch (const std::exception& e) {
        w.skipped = true;
        w.skip_reason = e.what();
        w.h_xy = w.h_xxy = kNan;
        w.p_xy = w.p_xxy = kNan;
    }
    return w;
}

// Residual-windowed variant used by the full_sample scope: the pre-whitening
// already happened globally, so a window only standardizes its residual
// slices and computes the statistics.
WindowResult analyze_residual_window(std::span<const double> x_raw,
                                     std::span<const double> y_raw,
                                     std::span<const double> rx,
                                     std::span<const double> ry,
                                     std::span<const double> vx,
                                     std::span<const double> vy,
                                     double vy_variance_ratio,
                                     int index_1based, Date start_date,
                                     Date end_date, const WindowSpec& spec) {
    const int L = spec.lag_depth;
    WindowResult w;
    w.window_index = index_1based;
    w.start_date = start_date;
    w.end_date = end_date;
    w.df_xy = L;
    w.df_xxy = L * (2 * L - 1);
    try {
        w.window_correlation = pearson_correlation(x_raw, y_raw);
        if (vy_variance_ratio < kCollinearVarianceRatio)
            throw std::invalid_argument("collinear pair");
        const auto sx = standardize(rx);
        const auto sy = standardize(ry);
        const auto second = h_xy(sx, sy, L);
        w.h_xy = second.statistic;
        w.p_xy = chi_square_sf(second.statistic, second.df);

        const auto ex = standardize(vx);
        const auto ey = standardize(vy);
        const auto third = h_xxy(ex, ey, L);
        w.h_xxy = third.statistic;
        w.p_xxy = chi_square_sf(third.statistic, third.df);
    } catch (const std::exception& e) {
        w.skipped = true;
        w.skip_reason = e.what();
        w.h_xy = w.h_xxy = kNan;
        w.p_xy = w.p_xxy = kNan;
    }
    return w;
}

void finalize_report(PairReport& report, const WindowSpec& spec) {
    report.n_significant = 0;
    report.plot_series.clear();
    for (const auto& w : report.windows) {
        if (w.skipped) continue;
        if (w.p_xxy < spec.alpha) ++report.n_significant;
        report.plot_series.emplace_back(w.window_index, 1.0 - w.p_xxy);
    }
    report.pct_significant =
        report.windows.empty()
            ? 0.0
            : 100.0 * static_cast<double>(report.n_significant) /
                  static_cast<double>(report.windows.size());
}

}  // namespace

int derive_lag_depth(int window_length, double exponent) {
    if (window_length < 2)
        throw std::invalid_argument("window length must be at least 2");
    if (!(exponent > 0.0 && exponent < 0.5))
        throw std::invalid_argument("exponent must lie in (0, 0.5)");
    const int L = static_cast<int>(std::floor(
        std::pow(static_cast<double>(window_length), exponent)));
    if (L < 1) throw std::invalid_argument("derived lag depth below 1");
    return L;
}

WindowSpec make_window_spec(int window_length, double exponent, double alpha) {
    return make_window_spec(window_length, exponent,
                            derive_lag_depth(window_length, exponent), alpha);
}

WindowSpec make_window_spec(int window_length, double exponent, int lag_depth,
                            double alpha) {
    WindowSpec spec{window_length, exponent, lag_depth, alpha};
    validate(spec);
    return spec;
}

void validate(const WindowSpec& spec) {
    if (spec.window_length < 2)
        throw std::invalid_argument("window length must be at least 2");
    if (!(spec.exponent > 0.0 && spec.exponent < 0.5))
        throw std::invalid_argument("exponent must lie in (0, 0.5)");
    if (spec.lag_depth < 1) throw std::invalid_argument("lag depth must be at least 1");
    if (spec.window_length <= 2 * spec.lag_depth)
        throw std::invalid_argument("window length must exceed twice the lag depth");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
}

std::vector<IndexRange> partition_windows(std::size_t total, std::size_t window_length) {
    if (window_length == 0) throw std::invalid_argument("window length must be positive");
    if (total < window_length)
        throw std::invalid_argument("sample shorter than one window");
    const std::size_t count = total / window_length;
    std::vector<IndexRange> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back({k * window_length, (k + 1) * window_length});
    return out;
}

double cross_correlation(std::span<const double> x, std::span<const double> y, int r) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    const std::size_t n = x.size();
    if (r < 1) throw std::invalid_argument("lag must be at least 1");
    if (static_cast<std::size_t>(r) >= n)
        throw std::invalid_argument("lag must be below the window length");
    double sum = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(r) < n; ++t)
        sum += x[t] * y[t + static_cast<std::size_t>(r)];
    return sum / static_cast<double>(n - static_cast<std::size_t>(r));
}

double cross_bicorrelation(std::span<const double> x, std::span<const double> y,
                           int r, int s) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    if (r < 1) throw std::invalid_argument("lag r must be at least 1");
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -s);
    const std::ptrdiff_t hi = std::min(n - 1 - r, n - 1 - s);
    if (hi < lo) throw std::invalid_argument("window too short for lag pair");
    double sum = 0.0;
    for (std::ptrdiff_t t = lo; t <= hi; ++t) sum += x[t] * x[t + r] * y[t + s];
    return sum / static_cast<double>(hi - lo + 1);
}

PortmanteauStat h_xy(std::span<const double> x, std::span<const double> y, int L) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    if (L < 1) throw std::invalid_argument("lag depth must be at least 1");
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    if (n <= L) throw std::invalid_argument("window too short");
    check_standardized(x, "h_xy");
    check_standardized(y, "h_xy");
    double stat = 0.0;
    for (int r = 1; r <= L; ++r) {
        const double c = cross_correlation(x, y, r);
        stat += static_cast<double>(n - r) * c * c;
    }
    return {stat, L};
}

std::vector<std::pair<int, int>> bicorrelation_lag_pairs(int L) {
    if (L < 1) throw std::invalid_argument("lag depth must be at least 1");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(L) * (2 * L - 1));
    for (int r = 1; r <= L; ++r)
        for (int s = -L; s <= L; ++s) {
            if (s == 0 || s == r) continue;
            pairs.emplace_back(r, s);
        }
    return pairs;
}

PortmanteauStat h_xxy(std::span<const double> x, std::span<const double> y, int L) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    if (L < 1) throw std::invalid_argument("lag depth must be at least 1");
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    if (n <= 2 * L) throw std::invalid_argument("window too short");
    check_standardized(x, "h_xxy");
    check_standardized(y, "h_xxy");
    double stat = 0.0;
    for (const auto& [r, s] : bicorrelation_lag_pairs(L)) {
        const double c = cross_bicorrelation(x, y, r, s);
        stat += static_cast<double>(bicorr_count(x.size(), r, s)) * c * c;
    }
    return {stat, L * (2 * L - 1)};
}

PairReport run_pair_test(const ReturnSeries& benchmark, const ReturnSeries& target,
                         const WindowSpec& spec, const PrewhitenConfig& prewhiten,
                         int threads) {
    validate(spec);
    if (benchmark.dates != target.dates)
        throw std::invalid_argument("series not date-aligned");
    if (benchmark.values.size() != target.values.size() ||
        benchmark.values.size() != benchmark.dates.size())
        throw std::invalid_argument("length mismatch");
    if (prewhiten.fixed_order < 0 || prewhiten.p_max < 0)
        throw std::invalid_argument("pre-whitening orders must be non-negative");

    const auto& x = benchmark.values;
    const auto& y = target.values;
    const auto& dates = benchmark.dates;
    const auto n = static_cast<std::size_t>(spec.window_length);

    PairReport report;
    report.benchmark_id = benchmark.id;
    report.target_id = target.id;
    report.spec = spec;
    report.prewhiten = prewhiten;
    report.full_sample_correlation = pearson_correlation(x, y);

    if (prewhiten.scope == PrewhitenScope::per_window) {
        const auto ranges = partition_windows(x.size(), n);
        report.windows.resize(ranges.size());
        parallel_for(ranges.size(), threads, [&](std::size_t k) {
            const auto [lo, hi] = ranges[k];
            report.windows[k] = analyze_window(
                std::span(x).subspan(lo, hi - lo), std::span(y).subspan(lo, hi - lo),
                static_cast<int>(k) + 1, dates[lo], dates[hi - 1], spec, prewhiten);
        });
    } else {
        // Fit once on the whole standardized sample, then window the
        // residual series. All residual series are aligned to a common
        // start so the windows cover identical dates.
        const auto zx = standardize(x);
        const auto zy = standardize(y);
        if (std::fabs(pearson_correlation(zx, zy)) > 1.0 - 1e-12)
            throw std::invalid_argument("collinear pair");
        int px, py, pv;
        if (prewhiten.mode == PrewhitenMode::fixed) {
            px = py = pv = prewhiten.fixed_order;
        } else {
            px = select_order_bic(zx, prewhiten.p_max);
            py = select_order_bic(zy, prewhiten.p_max);
            pv = select_order_bic(zx, zy, prewhiten.p_max, true);
        }
        const int s0 = std::max({px, py, pv});
        const auto rx = fit_ar(zx, px, s0).residuals;
        const auto ry = fit_ar(zy, py, s0).residuals;
        const auto vf = fit_var(zx, zy, pv, true, s0);
        const double vy_var = sample_variance(vf.residuals_y) / sample_variance(zy);

        const auto ranges = partition_windows(rx.size(), n);
        report.windows.resize(ranges.size());
        parallel_for(ranges.size(), threads, [&](std::size_t k) {
            const auto [lo, hi] = ranges[k];
            const std::size_t len = hi - lo;
            const std::size_t raw_lo = lo + static_cast<std::size_t>(s0);
            report.windows[k] = analyze_residual_window(
                std::span(x).subspan(raw_lo, len), std::span(y).subspan(raw_lo, len),
                std::span(rx).subspan(lo, len), std::span(ry).subspan(lo, len),
                std::span(vf.residuals_x).subspan(lo, len),
                std::span(vf.residuals_y).subspan(lo, len), vy_var,
                static_cast<int>(k) + 1, dates[raw_lo], dates[raw_lo + len - 1], spec);
        });
    }

    finalize_report(report, spec);
    return report;
}

PairSummary summarize(const PairReport& report) {
    if (report.windows.empty()) throw std::invalid_argument("empty report");
    PairSummary s;
    s.benchmark_id = report.benchmark_id;
    s.target_id = report.target_id;
    s.n_windows = report.windows.size();
    s.n_significant = report.n_significant;
    s.pct_significant = report.pct_significant;
    s.full_sample_correlation = report.full_sample_correlation;

    double best_stat = -1.0;
    for (const auto& w : report.windows) {
        if (w.skipped) {
            ++s.n_skipped;
            continue;
        }
        if (w.h_xxy > best_stat) {
            best_stat = w.h_xxy;
            s.largest_window_correlation = w.window_correlation;
            s.largest_window_index = w.window_index;
        }
        if (w.p_xxy < report.spec.alpha)
            s.significant_windows.push_back({w.window_index, w.start_date, w.end_date});
    }
    return s;
}

}  // namespace xbicorr
