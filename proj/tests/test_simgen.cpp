#include "xbicorr/simgen.hpp"

#include "xbicorr/rng.hpp"
#include "xbicorr/series.hpp"

#include <doctest.h>

#include "oracle.hpp"
#include "test_util.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

using namespace xbicorr;

TEST_CASE("gen_gaussian_iid determinism and moments") {
    const auto a = gen_gaussian_iid(1000, 42);
    const auto b = gen_gaussian_iid(1000, 42);
    CHECK(a == b);

    const auto c = gen_gaussian_iid(1000, 43);
    CHECK(a != c);

    const auto big = gen_gaussian_iid(100000, 7);
    CHECK(std::fabs(mean_of(big)) < 0.02);
    const double var = sample_variance(big);
    CHECK(var > 0.97);
    CHECK(var < 1.03);
}

TEST_CASE("substreams are distinct and order-free") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(Rng::substream(42, i));
    CHECK(seen.size() == 10000);
    CHECK(Rng::substream(42, 5) == Rng::substream(42, 5));
    CHECK(Rng::substream(42, 5) != Rng::substream(43, 5));
}

TEST_CASE("gen_ar") {
    SUBCASE("empty coefficients reproduce the iid stream") {
        const auto iid = gen_gaussian_iid(500, 11);
        const auto ar0 = gen_ar({}, 500, 11, 0);
        CHECK(iid == ar0);
    }
    SUBCASE("lag-1 autocorrelation near phi") {
        const std::vector<double> phi = {0.5};
        const auto x = gen_ar(phi, 5000, 12);
        double num = 0.0, den = 0.0;
        const double m = mean_of(x);
        for (std::size_t t = 0; t < x.size(); ++t) {
            den += (x[t] - m) * (x[t] - m);
            if (t + 1 < x.size()) num += (x[t] - m) * (x[t + 1] - m);
        }
        CHECK(std::fabs(num / den - 0.5) < 0.05);
    }
    SUBCASE("non-stationary coefficients are rejected") {
        const std::vector<double> phi = {1.1};
        CHECK(testutil::throws_with(
            [&] { static_cast<void>(gen_ar(phi, 100, 1)); }, "non-stationary"));
        const std::vector<double> unit = {1.0};
        CHECK(testutil::throws_with(
            [&] { static_cast<void>(gen_ar(unit, 100, 1)); }, "non-stationary"));
    }
    SUBCASE("companion spectral radius") {
        const std::vector<double> stable = {0.5, -0.3};
        CHECK(companion_spectral_radius(stable) ==
              doctest::Approx(std::sqrt(0.3)).epsilon(1e-6));
        const std::vector<double> rw = {1.0};
        CHECK(companion_spectral_radius(rw) == doctest::Approx(1.0));
        // higher order, complex root pairs
        const std::vector<double> p5(5, 0.1);
        CHECK(companion_spectral_radius(p5) < 1.0);
        CHECK_NOTHROW(static_cast<void>(gen_ar(p5, 50, 3)));
        const std::vector<double> explosive = {0.2, 0.2, 0.2, 0.2, 0.5};
        CHECK(companion_spectral_radius(explosive) > 1.0);
    }
}

TEST_CASE("gen_cross_bilinear") {
    SUBCASE("theta 0 is pure noise, identical to the iid stream") {
        const auto x = gen_gaussian_iid(200, 21);
        const auto y = gen_cross_bilinear(x, 0.0, 22);
        CHECK(y == gen_gaussian_iid(200, 22));
    }
    SUBCASE("creates C_xxy(1,2) but no cross-correlation") {
        const auto x = gen_gaussian_iid(5000, 23);
        const auto y = gen_cross_bilinear(x, 0.8, 24);
        const auto zx = standardize(x);
        const auto zy = standardize(y);
        const double bound = 3.0 / std::sqrt(5000.0);
        CHECK(std::fabs(oracle::cross_bicorr(zx, zy, 1, 2)) > bound);
        for (int r = 1; r <= 3; ++r)
            CHECK(std::fabs(oracle::cross_corr(zx, zy, r)) < bound);
    }
    SUBCASE("series too short") {
        const std::vector<double> x = {1.0, 2.0};
        CHECK(testutil::throws_with(
            [&] { static_cast<void>(gen_cross_bilinear(x, 0.5, 1)); },
            "series too short"));
    }
}

TEST_CASE("process spec validation") {
    CHECK_THROWS_AS(static_cast<void>(make_process_spec(
                        ProcessKind::ar, {1.2}, 100, 1)),
                    std::invalid_argument);
    const auto spec = make_process_spec(ProcessKind::ar, {0.5}, 100, 1);
    const auto x = generate(spec);
    CHECK(x.size() == 100);
    const auto driver = gen_gaussian_iid(50, 2);
    const auto bl = make_process_spec(ProcessKind::cross_bilinear, {0.7}, 50, 3);
    const auto y = generate(bl, driver);
    CHECK(y.size() == 50);
    CHECK_THROWS_AS(static_cast<void>(generate(bl)), std::invalid_argument);
}

TEST_CASE("monte_carlo_size edge cases") {
    const auto spec = make_window_spec(25, 0.4, 0.05);

    SUBCASE("alpha -> 1 rejects everything") {
        auto loose = spec;
        loose.alpha = 0.999999;
        const auto r = monte_carlo_size(loose, 200, 5);
        CHECK(r.rejection_rate == 1.0);
    }
    SUBCASE("alpha -> 0 rejects nothing") {
        auto strict = spec;
        strict.alpha = 1e-12;
        const auto r = monte_carlo_size(strict, 200, 5);
        CHECK(r.rejection_rate == 0.0);
    }
    SUBCASE("determinism and rate consistency") {
        const auto a = monte_carlo_size(spec, 300, 9);
        const auto b = monte_carlo_size(spec, 300, 9);
        CHECK(a.rejections == b.rejections);
        CHECK(a.rejection_rate ==
              doctest::Approx(static_cast<double>(a.rejections) / 300.0));
        const auto parallel = monte_carlo_study(0.0, spec, 25, 300, 9, 4);
        CHECK(parallel.h_xxy.rejections == a.rejections);
    }
    SUBCASE("too few replications") {
        CHECK_THROWS_AS(static_cast<void>(monte_carlo_size(spec, 99, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("power is non-decreasing in theta and matches size at theta 0") {
    const auto spec = make_window_spec(25, 0.4, 0.05);
    const std::uint64_t seed = 31337;
    const std::uint64_t reps = 500;

    const auto size = monte_carlo_size(spec, reps, seed);
    const auto p0 = monte_carlo_power(0.0, spec, 25, reps, seed);
    CHECK(p0.rejections == size.rejections);  // identical harness at theta 0

    const auto p04 = monte_carlo_power(0.4, spec, 250, reps, seed);
    const auto p08 = monte_carlo_power(0.8, spec, 250, reps, seed);
    const auto size250 = monte_carlo_power(0.0, spec, 250, reps, seed);
    CHECK(size250.rejection_rate <= p04.rejection_rate);
    CHECK(p04.rejection_rate <= p08.rejection_rate);
    CHECK(p08.rejection_rate > size250.rejection_rate + 0.2);
}
