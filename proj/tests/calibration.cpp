// Computes the Monte Carlo baselines that the acceptance suite freezes.
// Every statistic here goes through the naive direct-summation oracle, not
// the engine, so the frozen numbers are an independent reference. Run
// manually:  ./calibration
//
// The acceptance suite then asserts (a) the engine reproduces these rates
// and (b) the bands from the corresponding criteria hold.

#include "xbicorr/prewhiten.hpp"
#include "xbicorr/rng.hpp"
#include "xbicorr/simgen.hpp"
#include "xbicorr/special.hpp"

#include "oracle.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

using namespace xbicorr;

namespace {

struct OracleRates {
    double xxy = 0.0;
    double xy = 0.0;
};

// Mirror of monte_carlo_study with the statistics computed by the oracle.
OracleRates oracle_mc(double theta, std::size_t n, int L, double alpha,
                      std::uint64_t reps, std::uint64_t seed) {
    std::uint64_t rej_xxy = 0, rej_xy = 0;
    for (std::uint64_t i = 0; i < reps; ++i) {
        const auto sx = gen_gaussian_iid(n, Rng::substream(seed, 2 * i));
        const auto sy = gen_cross_bilinear(sx, theta, Rng::substream(seed, 2 * i + 1));
        const auto zx = standardize(sx);
        const auto zy = standardize(sy);
        const double hxxy = oracle::h_xxy(zx, zy, L);
        const double hxy = oracle::h_xy(zx, zy, L);
        if (chi_square_sf(hxxy, L * (2 * L - 1)) < alpha) ++rej_xxy;
        if (chi_square_sf(hxy, L) < alpha) ++rej_xy;
    }
    return {static_cast<double>(rej_xxy) / static_cast<double>(reps),
            static_cast<double>(rej_xy) / static_cast<double>(reps)};
}

std::vector<double> localized_target(const std::vector<double>& x, double theta,
                                     std::size_t inject_lo, std::size_t inject_hi,
                                     std::uint64_t noise_seed) {
    Rng rng(noise_seed);
    std::vector<double> y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        const bool injected = t >= inject_lo && t < inject_hi && t >= 2;
        y[t] = (injected ? theta * x[t - 1] * x[t - 2] : 0.0) + rng.normal();
    }
    return y;
}

void localization_scan() {
    std::printf("\nlocalization scan (inject windows 10..20, theta=0.8, alpha=0.05)\n");
    std::printf("seed  flagged_injected/11  flagged_clean/110  pass\n");
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
        const auto x = gen_gaussian_iid(3025, Rng::substream(seed, 0));
        const auto y = localized_target(x, 0.8, 225, 500, Rng::substream(seed, 1));
        ReturnSeries bx, by;
        bx.id = "x";
        by.id = "y";
        for (std::size_t i = 0; i < x.size(); ++i) {
            const int day = static_cast<int>(i);
            const Date d{2003 + day / 336, 1 + (day % 336) / 28, 1 + day % 28};
            bx.dates.push_back(d);
            by.dates.push_back(d);
        }
        bx.values = x;
        by.values = y;
        const auto report =
            run_pair_test(bx, by, make_window_spec(25, 0.4, 0.05), {});
        int injected = 0, clean = 0;
        for (const auto& w : report.windows) {
            if (w.skipped) continue;
            const bool flagged = w.p_xxy < 0.05;
            if (w.window_index >= 10 && w.window_index <= 20)
                injected += flagged;
            else
                clean += flagged;
        }
        const bool pass = injected >= 6 && clean <= 11;
        std::printf("%4llu  %19d  %17d  %s\n",
                    static_cast<unsigned long long>(seed), injected, clean,
                    pass ? "yes" : "no");
    }
}

void bic_scan() {
    std::printf("\nBIC order selection, AR(2) phi=(0.5,-0.3), T=2000, p_max=8, 200 reps\n");
    const std::vector<double> phi = {0.5, -0.3};
    for (std::uint64_t seed : {9001ULL, 2024ULL, 77ULL}) {
        int correct = 0, whitened = 0;
        for (int i = 0; i < 200; ++i) {
            const auto x = gen_ar(phi, 2000, Rng::substream(seed, i));
            const int p = select_order_bic(x, 8);
            if (p == 2) ++correct;
            const auto fit = fit_ar(x, p);
            const double bound = 3.0 / std::sqrt(2000.0);
            double r1 = 0.0, r2 = 0.0, den = 0.0;
            const auto& e = fit.residuals;
            double m = 0.0;
            for (double v : e) m += v;
            m /= static_cast<double>(e.size());
            for (std::size_t t = 0; t < e.size(); ++t) {
                den += (e[t] - m) * (e[t] - m);
                if (t + 1 < e.size()) r1 += (e[t] - m) * (e[t + 1] - m);
                if (t + 2 < e.size()) r2 += (e[t] - m) * (e[t + 2] - m);
            }
            if (std::fabs(r1 / den) < bound && std::fabs(r2 / den) < bound) ++whitened;
        }
        std::printf("seed %llu: selected order 2 in %d/200, residuals white in %d/200\n",
                    static_cast<unsigned long long>(seed), correct, whitened);
    }
}

}  // namespace


namespace {

void single_window_power_scan() {
    std::printf("\nsingle-window power at n=25, theta=0.8, alpha=0.05, 2000 reps, seed 42\n");
    const auto raw = oracle_mc(0.8, 25, 3, 0.05, 2000, 42);
    std::printf("raw standardized (no prewhitening): H_xxy %.4f  H_xy %.4f\n", raw.xxy, raw.xy);
}

void localization_scan_cfg(const PrewhitenConfig& cfg, const char* label) {
    std::printf("\nlocalization scan [%s]\n", label);
    std::printf("seed  flagged_injected/11  flagged_clean/110  pass\n");
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
        const auto x = gen_gaussian_iid(3025, Rng::substream(seed, 0));
        const auto y = localized_target(x, 0.8, 225, 500, Rng::substream(seed, 1));
        ReturnSeries bx, by;
        bx.id = "x";
        by.id = "y";
        for (std::size_t i = 0; i < x.size(); ++i) {
            const int day = static_cast<int>(i);
            const Date d{2003 + day / 336, 1 + (day % 336) / 28, 1 + day % 28};
            bx.dates.push_back(d);
            by.dates.push_back(d);
        }
        bx.values = x;
        by.values = y;
        const auto report =
            run_pair_test(bx, by, make_window_spec(25, 0.4, 0.05), cfg);
        int injected = 0, clean = 0;
        for (const auto& w : report.windows) {
            if (w.skipped) continue;
            const bool flagged = w.p_xxy < 0.05;
            if (w.window_index >= 10 && w.window_index <= 20)
                injected += flagged;
            else
                clean += flagged;
        }
        const bool pass = injected >= 6 && clean <= 11;
        std::printf("%4llu  %19d  %17d  %s\n",
                    static_cast<unsigned long long>(seed), injected, clean,
                    pass ? "yes" : "no");
    }
}

}  // namespace

int main() {
    std::printf("oracle Monte Carlo baselines (2000 reps, seed 42)\n");

    const auto size25 = oracle_mc(0.0, 25, 3, 0.05, 2000, 42);
    std::printf("size  n=25  L=3 : H_xxy %.6f  H_xy %.6f\n", size25.xxy, size25.xy);

    const auto size250 = oracle_mc(0.0, 250, 9, 0.05, 2000, 42);
    std::printf("size  n=250 L=9 : H_xxy %.6f  H_xy %.6f\n", size250.xxy, size250.xy);

    const auto power04 = oracle_mc(0.4, 250, 9, 0.05, 2000, 42);
    std::printf("power theta=0.4: H_xxy %.6f  H_xy %.6f\n", power04.xxy, power04.xy);

    const auto power08 = oracle_mc(0.8, 250, 9, 0.05, 2000, 42);
    std::printf("power theta=0.8: H_xxy %.6f  H_xy %.6f\n", power08.xxy, power08.xy);

    single_window_power_scan();
    localization_scan();
    PrewhitenConfig bic_cfg;
    bic_cfg.mode = PrewhitenMode::bic;
    localization_scan_cfg(bic_cfg, "prewhiten=bic per-window");
    PrewhitenConfig zero_cfg;
    zero_cfg.fixed_order = 0;
    localization_scan_cfg(zero_cfg, "prewhiten=fixed order 0");
    bic_scan();
    return 0;
}
