#pragma once

#include "xbicorr/crossbicorr.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace xbicorr {

enum class ProcessKind { gaussian_iid, ar, cross_bilinear };

/// Parameters for one synthetic process. `params` holds AR coefficients for
/// kind ar (checked for stationarity) or {theta} for kind cross_bilinear.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::gaussian_iid;
    std::vector<double> params;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::size_t burn_in = 100;
};

/// Validates and returns the spec; AR coefficients must define a stationary
/// process (companion-matrix spectral radius < 1).
[[nodiscard]] ProcessSpec make_process_spec(ProcessKind kind,
                                            std::vector<double> params,
                                            std::size_t length,
                                            std::uint64_t seed,
                                            std::size_t burn_in = 100);

/// Generates the process. cross_bilinear requires `driver` (the x series)
/// of the spec's length; the other kinds ignore it.
[[nodiscard]] std::vector<double> generate(const ProcessSpec& spec,
                                           std::span<const double> driver = {});

/// Largest root magnitude of the AR companion matrix; < 1 means stationary.
[[nodiscard]] double companion_spectral_radius(std::span<const double> coefficients);

// Seeded standard Gaussian draws.
[[nodiscard]] std::vector<double> gen_gaussian_iid(std::size_t length,
                                                   std::uint64_t seed);

// AR(p) with unit-variance Gaussian innovations; the first burn_in draws are
// discarded so initial conditions are forgotten.
[[nodiscard]] std::vector<double> gen_ar(std::span<const double> coefficients,
                                         std::size_t length, std::uint64_t seed,
                                         std::size_t burn_in = 100);

// y_t = theta * x_{t-1} * x_{t-2} + e_t: nonzero population
// cross-bicovariance at (r, s) = (1, 2) but zero cross-correlation with x at
// every lag, so the alternative is visible only to the third-order test.
[[nodiscard]] std::vector<double> gen_cross_bilinear(std::span<const double> x,
                                                     double theta,
                                                     std::uint64_t seed);

struct McResult {
    std::uint64_t replications = 0;
    std::uint64_t rejections = 0;
    double rejection_rate = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
};

/// Rejection rates of both portmanteau tests under the same replications.
struct McStudy {
    McResult h_xxy;
    McResult h_xy;
};

/// Monte Carlo harness: per replication, draw x Gaussian and y from the
/// cross-bilinear process (theta = 0 recovers the independent null),
/// standardize, and run the single-window H_xy / H_xxy tests at spec.alpha.
/// `length` overrides spec.window_length; when it differs, L is re-derived
/// from spec.exponent. Replication substreams come from Rng::substream so
/// results are independent of `threads`.
[[nodiscard]] McStudy monte_carlo_study(double theta, const WindowSpec& spec,
                                        std::size_t length,
                                        std::uint64_t replications,
                                        std::uint64_t seed, int threads = 1);

/// Size under the null: independent Gaussian pairs of length
/// spec.window_length, H_xxy rejection rate at spec.alpha.
[[nodiscard]] McResult monte_carlo_size(const WindowSpec& spec,
                                        std::uint64_t replications,
                                        std::uint64_t seed, int threads = 1);

/// Power under the cross-bilinear alternative (H_xxy rejection rate).
[[nodiscard]] McResult monte_carlo_power(double theta, const WindowSpec& spec,
                                         std::size_t length,
                                         std::uint64_t replications,
                                         std::uint64_t seed, int threads = 1);

}  // namespace xbicorr
