#pragma once

// Naive direct-summation reference implementations of the portmanteau
// statistics. Kept deliberately independent of the library's engine: every
// sum enumerates all t and checks index admissibility explicitly, and the
// lag set is rebuilt from scratch. Used to cross-check the engine and to
// freeze Monte Carlo baselines.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double cross_corr(std::span<const double> x, std::span<const double> y, int r) {
    const auto n = static_cast<long>(x.size());
    double sum = 0.0;
    long count = 0;
    for (long t = 0; t < n; ++t) {
        if (t + r >= 0 && t + r < n) {
            sum += x[static_cast<std::size_t>(t)] * y[static_cast<std::size_t>(t + r)];
            ++count;
        }
    }
    if (count == 0) throw std::runtime_error("no admissible summand");
    return sum / static_cast<double>(count);
}

inline double cross_bicorr(std::span<const double> x, std::span<const double> y,
                           int r, int s) {
    const auto n = static_cast<long>(x.size());
    double sum = 0.0;
    long count = 0;
    for (long t = 0; t < n; ++t) {
        const long a = t + r;
        const long b = t + s;
        if (a >= 0 && a < n && b >= 0 && b < n) {
            sum += x[static_cast<std::size_t>(t)] * x[static_cast<std::size_t>(a)] *
                   y[static_cast<std::size_t>(b)];
            ++count;
        }
    }
    if (count == 0) throw std::runtime_error("no admissible summand");
    return sum / static_cast<double>(count);
}

inline long bicorr_weight(long n, int r, int s) {
    long count = 0;
    for (long t = 0; t < n; ++t) {
        const long a = t + r;
        const long b = t + s;
        if (a >= 0 && a < n && b >= 0 && b < n) ++count;
    }
    return count;
}

inline double h_xy(std::span<const double> x, std::span<const double> y, int L) {
    const auto n = static_cast<long>(x.size());
    double stat = 0.0;
    for (int r = 1; r <= L; ++r) {
        const double c = cross_corr(x, y, r);
        stat += static_cast<double>(n - r) * c * c;
    }
    return stat;
}

inline double h_xxy(std::span<const double> x, std::span<const double> y, int L) {
    const auto n = static_cast<long>(x.size());
    double stat = 0.0;
    for (int r = 1; r <= L; ++r) {
        for (int s = -L; s <= L; ++s) {
            if (s == 0 || s == r) continue;
            const double c = cross_bicorr(x, y, r, s);
            stat += static_cast<double>(bicorr_weight(n, r, s)) * c * c;
        }
    }
    return stat;
}

}  // namespace oracle
