#pragma once

#include "xbicorr/series.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace xbicorr {

/// Test configuration for one windowed run: window length n, the exponent c
/// in (0, 0.5) that sets the lag depth L = floor(n^c), and the significance
/// level. n > 2L must hold so every lag pair has at least one summand.
struct WindowSpec {
    int window_length = 25;
    double exponent = 0.4;
    int lag_depth = 3;
    double alpha = 0.05;
};

/// Lag depth L = floor(n^c), requiring 0 < c < 0.5.
[[nodiscard]] int derive_lag_depth(int window_length, double exponent);

/// Builds a spec with L derived from (n, c) and validates all invariants.
[[nodiscard]] WindowSpec make_window_spec(int window_length, double exponent,
                                          double alpha);

/// As above with an explicit L override (still requires n > 2L).
[[nodiscard]] WindowSpec make_window_spec(int window_length, double exponent,
                                          int lag_depth, double alpha);

void validate(const WindowSpec& spec);

/// Half-open index range [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// floor(T/n) consecutive non-overlapping ranges of length exactly n; the
/// trailing T mod n observations are dropped.
[[nodiscard]] std::vector<IndexRange> partition_windows(std::size_t total,
                                                        std::size_t window_length);

/// Sample cross-correlation C_xy(r) = (N-r)^-1 sum_t x(t) y(t+r), 1 <= r < N.
[[nodiscard]] double cross_correlation(std::span<const double> x,
                                       std::span<const double> y, int r);

/// Sample cross-bicorrelation C_xxy(r, s): the mean of x(t) x(t+r) y(t+s)
/// over every t for which all three indices fall inside the window. For
/// s >= 0 the summand count equals N - max(r, s); for s < 0 it is N - r - |s|.
[[nodiscard]] double cross_bicorrelation(std::span<const double> x,
                                         std::span<const double> y, int r, int s);

struct PortmanteauStat {
    double statistic = 0.0;
    int df = 0;
};

/// H_xy = sum_{r=1..L} (N-r) C_xy(r)^2, asymptotically Chi2 with L degrees
/// of freedom. Inputs must already be standardized (checked to 1e-6).
[[nodiscard]] PortmanteauStat h_xy(std::span<const double> x,
                                   std::span<const double> y, int L);

/// H_xxy: the weighted sum of squared cross-bicorrelations over the lag set
/// from bicorrelation_lag_pairs(L), asymptotically Chi2 with L(2L-1)
/// degrees of freedom. Requires N > 2L and standardized inputs.
[[nodiscard]] PortmanteauStat h_xxy(std::span<const double> x,
                                    std::span<const double> y, int L);

/// The (r, s) pairs entering H_xxy: r in 1..L, s in -L..L excluding s = 0
/// and s = r. Exactly L(2L-1) pairs.
[[nodiscard]] std::vector<std::pair<int, int>> bicorrelation_lag_pairs(int L);

enum class PrewhitenMode { fixed, bic };
enum class PrewhitenScope { per_window, full_sample };

/// How linear structure is removed before the portmanteau statistics.
/// `fixed` forces AR(p)/VAR(p) at fixed_order; `bic` selects the order per
/// fit up to p_max. Scope `per_window` filters each window independently;
/// `full_sample` fits once on the whole series and windows the residuals.
struct PrewhitenConfig {
    PrewhitenMode mode = PrewhitenMode::fixed;
    int fixed_order = 2;
    int p_max = 10;
    PrewhitenScope scope = PrewhitenScope::per_window;
};

/// Per-window outcome. Skipped windows (degenerate or unfittable data) keep
/// their index and dates and carry a reason instead of statistics.
struct WindowResult {
    int window_index = 0;  ///< 1-based, stable across skips
    Date start_date;
    Date end_date;
    bool skipped = false;
    std::string skip_reason;
    double h_xy = 0.0;
    int df_xy = 0;
    double p_xy = 1.0;
    double h_xxy = 0.0;
    int df_xxy = 0;
    double p_xxy = 1.0;
    double window_correlation = 0.0;
};

/// All window results for one (benchmark, target) pair.
struct PairReport {
    std::string benchmark_id;
    std::string target_id;
    WindowSpec spec;
    PrewhitenConfig prewhiten;
    std::vector<WindowResult> windows;
    std::size_t n_significant = 0;   ///< windows with p_xxy < alpha
    double pct_significant = 0.0;    ///< 100 * n_significant / #windows
    double full_sample_correlation = 0.0;
    std::vector<std::pair<int, double>> plot_series;  ///< (index, 1 - p_xxy)
};

/// Runs the full windowed pipeline on a date-aligned pair: per window,
/// standardize, pre-whiten (AR per series for H_xy, VAR with a
/// contemporaneous x term in the y equation for H_xxy), re-standardize the
/// residuals, and compute both statistics with Chi2 p-values. Windows where
/// a fit degenerates are reported as skipped, not dropped. Deterministic;
/// `threads` only distributes the window loop.
[[nodiscard]] PairReport run_pair_test(const ReturnSeries& benchmark,
                                       const ReturnSeries& target,
                                       const WindowSpec& spec,
                                       const PrewhitenConfig& prewhiten,
                                       int threads = 1);

/// Dated row for one significant window.
struct SignificantWindow {
    int window_index = 0;
    Date start_date;
    Date end_date;
};

/// Summary row plus the dated table of significant windows.
struct PairSummary {
    std::string benchmark_id;
    std::string target_id;
    std::size_t n_windows = 0;
    std::size_t n_skipped = 0;
    std::size_t n_significant = 0;
    double pct_significant = 0.0;
    double full_sample_correlation = 0.0;
    /// Pearson correlation of the window with the largest H_xxy, and that
    /// window's index (0 when every window was skipped).
    double largest_window_correlation = 0.0;
    int largest_window_index = 0;
    std::vector<SignificantWindow> significant_windows;
};

[[nodiscard]] PairSummary summarize(const PairReport& report);

}  // namespace xbicorr
