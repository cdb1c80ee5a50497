#include "xbicorr/simgen.hpp"

#include "xbicorr/parallel.hpp"
#include "xbicorr/rng.hpp"
#include "xbicorr/special.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace xbicorr {

double companion_spectral_radius(std::span<const double> coefficients) {
    const std::size_t p = coefficients.size();
    if (p == 0) return 0.0;
    if (p == 1) return std::fabs(coefficients[0]);

    // Roots of z^p - phi_1 z^{p-1} - ... - phi_p by Durand-Kerner.
    using cd = std::complex<double>;
    std::vector<cd> poly(p + 1);  // poly[j] multiplies z^j
    poly[p] = 1.0;
    for (std::size_t j = 1; j <= p; ++j) poly[p - j] = -coefficients[j - 1];

    const auto eval = [&](cd z) {
        cd v = poly[p];
        for (std::size_t j = p; j-- > 0;) v = v * z + poly[j];
        return v;
    };

    std::vector<cd> roots(p);
    const cd start(0.4, 0.9);
    cd acc(1.0, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        acc *= start;
        roots[i] = acc;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            cd denom(1.0, 0.0);
            for (std::size_t j = 0; j < p; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            const cd delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-13) break;
    }
    double radius = 0.0;
    for (const auto& z : roots) radius = std::max(radius, std::abs(z));
    return radius;
}

ProcessSpec make_process_spec(ProcessKind kind, std::vector<double> params,
                              std::size_t length, std::uint64_t seed,
                              std::size_t burn_in) {
    if (length < 1) throw std::invalid_argument("length must be positive");
    if (kind == ProcessKind::ar && companion_spectral_radius(params) >= 1.0)
        throw std::invalid_argument("non-stationary");
    if (kind == ProcessKind::cross_bilinear && params.size() != 1)
        throw std::invalid_argument("cross_bilinear takes a single theta parameter");
    return {kind, std::move(params), length, seed, burn_in};
}

std::vector<double> generate(const ProcessSpec& spec, std::span<const double> driver) {
    switch (spec.kind) {
        case ProcessKind::gaussian_iid:
            return gen_gaussian_iid(spec.length, spec.seed);
        case ProcessKind::ar:
            return gen_ar(spec.params, spec.length, spec.seed, spec.burn_in);
        case ProcessKind::cross_bilinear:
            if (driver.size() != spec.length)
                throw std::invalid_argument(
                    "cross_bilinear requires a driver series of the spec length");
            return gen_cross_bilinear(driver, spec.params.at(0), spec.seed);
    }
    throw std::invalid_argument("unknown process kind");
}

std::vector<double> gen_gaussian_iid(std::size_t length, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("length must be positive");
    Rng rng(seed);
    std::vector<double> out(length);
    for (auto& v : out) v = rng.normal();
    return out;
}

std::vector<double> gen_ar(std::span<const double> coefficients, std::size_t length,
                           std::uint64_t seed, std::size_t burn_in) {
    if (length < 1) throw std::invalid_argument("length must be positive");
    if (companion_spectral_radius(coefficients) >= 1.0)
        throw std::invalid_argument("non-stationary");
    const std::size_t p = coefficients.size();
    Rng rng(seed);
    std::vector<double> history(p, 0.0);  // history[j] = x_{t-1-j}
    std::vector<double> out;
    out.reserve(length);
    for (std::size_t t = 0; t < burn_in + length; ++t) {
        double x = rng.normal();
        for (std::size_t j = 0; j < p; ++j) x += coefficients[j] * history[j];
        if (p > 0) {
            for (std::size_t j = p; j-- > 1;) history[j] = history[j - 1];
            history[0] = x;
        }
        if (t >= burn_in) out.push_back(x);
    }
    return out;
}

std::vector<double> gen_cross_bilinear(std::span<const double> x, double theta,
                                       std::uint64_t seed) {
    if (x.size() < 3) throw std::invalid_argument("series too short");
    Rng rng(seed);
    std::vector<double> y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double coupling = t >= 2 ? theta * x[t - 1] * x[t - 2] : 0.0;
        y[t] = coupling + rng.normal();
    }
    return y;
}

McStudy monte_carlo_study(double theta, const WindowSpec& spec, std::size_t length,
                          std::uint64_t replications, std::uint64_t seed,
                          int threads) {
    if (replications < 100)
        throw std::invalid_argument("replications must be at least 100");

    WindowSpec eff = spec;
    if (length != 0 && static_cast<int>(length) != spec.window_length) {
        eff = make_window_spec(static_cast<int>(length), spec.exponent, spec.alpha);
        eff.alpha = spec.alpha;
    }
    validate(eff);
    const auto n = static_cast<std::size_t>(eff.window_length);
    const int L = eff.lag_depth;

    std::vector<unsigned char> reject_xxy(replications, 0);
    std::vector<unsigned char> reject_xy(replications, 0);
    parallel_for(replications, threads, [&](std::size_t i) {
        const auto sx = gen_gaussian_iid(n, Rng::substream(seed, 2 * i));
        const auto sy = gen_cross_bilinear(sx, theta, Rng::substream(seed, 2 * i + 1));
        const auto zx = standardize(sx);
        const auto zy = standardize(sy);
        const auto third = h_xxy(zx, zy, L);
        const auto second = h_xy(zx, zy, L);
        reject_xxy[i] = chi_square_sf(third.statistic, third.df) < eff.alpha ? 1 : 0;
        reject_xy[i] = chi_square_sf(second.statistic, second.df) < eff.alpha ? 1 : 0;
    });

    const auto tally = [&](const std::vector<unsigned char>& flags) {
        McResult r;
        r.replications = replications;
        for (auto f : flags) r.rejections += f;
        r.rejection_rate =
            static_cast<double>(r.rejections) / static_cast<double>(replications);
        r.alpha = eff.alpha;
        r.seed = seed;
        return r;
    };
    return {tally(reject_xxy), tally(reject_xy)};
}

McResult monte_carlo_size(const WindowSpec& spec, std::uint64_t replications,
                          std::uint64_t seed, int threads) {
    return monte_carlo_study(0.0, spec, static_cast<std::size_t>(spec.window_length),
                             replications, seed, threads)
        .h_xxy;
}

McResult monte_carlo_power(double theta, const WindowSpec& spec, std::size_t length,
                           std::uint64_t replications, std::uint64_t seed,
                           int threads) {
    return monte_carlo_study(theta, spec, length, replications, seed, threads).h_xxy;
}

}  // namespace xbicorr
