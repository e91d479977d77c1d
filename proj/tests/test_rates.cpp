#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "benkit/rates.hpp"
#include "benkit/special_functions.hpp"
#include "oracle.hpp"

using namespace benkit;

namespace {

const BoundedRange kUnit{0.0, 1.0};

}  // namespace

TEST_CASE("fit_loglog_slope on exact power laws") {
    std::vector<RatePoint> points;
    for (uint64_t n = 100; n <= 100000000ULL; n *= 10) {
        points.push_back({n, std::pow(double(n), -0.5)});
    }
    const SlopeFit fit = fit_loglog_slope(points);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.std_error < 1e-10);

    std::vector<RatePoint> p7;
    for (uint64_t n = 10; n <= 10000000ULL; n *= 10) {
        p7.push_back({n, 3.0 * std::pow(double(n), -0.7)});
    }
    CHECK(fit_loglog_slope(p7).slope == doctest::Approx(-0.7).epsilon(1e-12));
}

TEST_CASE("fit_loglog_slope on a noisy power law") {
    // 1% multiplicative noise from a fixed pattern: slope within +-0.02
    std::vector<RatePoint> points;
    const double noise[8] = {1.01, 0.99, 1.008, 0.994, 1.002, 0.991, 1.007, 0.996};
    int k = 0;
    for (uint64_t n = 100; n <= 1000000000ULL; n *= 10) {
        points.push_back({n, std::pow(double(n), -0.6) * noise[k++ % 8]});
    }
    const SlopeFit fit = fit_loglog_slope(points);
    CHECK(std::abs(fit.slope - (-0.6)) < 0.02);
    CHECK(fit.std_error > 0.0);
}

TEST_CASE("fit_loglog_slope input validation") {
    std::vector<RatePoint> few{{10, 1.0}, {100, 0.5}, {1000, 0.25}, {10000, 0.12}};
    CHECK_THROWS_AS(fit_loglog_slope(few), std::invalid_argument);
    std::vector<RatePoint> bad{{10, 1.0}, {100, 0.5}, {1000, -0.25}, {10000, 0.12},
                               {100000, 0.06}};
    CHECK_THROWS_AS(fit_loglog_slope(bad), std::domain_error);
}

TEST_CASE("radius_curve via the bound inverters") {
    const UenValue uen(5.0, UenSource::UserSupplied);
    const auto grid = log_n_grid(1000, 1000000000ULL, 25);

    SUBCASE("constant-entropy Hoeffding radius: slope exactly -1/2") {
        const RateCurve curve = radius_curve(
            "hoeffding_uen",
            [&](uint64_t n) { return hoeffding_uen_radius(0.05, n, kUnit, uen); }, grid);
        CHECK(curve.fitted_slope == doctest::Approx(-0.5).epsilon(1e-10));
        CHECK(curve.dropped.empty());
        CHECK(curve.points.size() == grid.size());
    }

    SUBCASE("Bernstein-style radius: slope approaches -1/2 at large N") {
        // the 1/N term fades, leaving the sqrt(2L/N) leading behavior
        const auto big = log_n_grid(100000000ULL, 1000000000000ULL, 9);
        const RateCurve curve = radius_curve(
            "bernstein_uen",
            [&](uint64_t n) { return bernstein_uen_radius(0.05, n, kUnit, uen); }, big);
        CHECK(std::abs(curve.fitted_slope - (-0.5)) < 0.005);
        // and from below -1/2 at moderate N (the 1/N term steepens it)
        const RateCurve mid = radius_curve(
            "bernstein_uen",
            [&](uint64_t n) { return bernstein_uen_radius(0.05, n, kUnit, uen); }, grid);
        CHECK(mid.fitted_slope < -0.5);
    }

    SUBCASE("fixed-exponent alternative radius: slope -1/gamma") {
        const RateCurve curve = radius_curve(
            "bennett_alt",
            [&](uint64_t n) {
                return bennett_alt_radius(0.05, n, kUnit, uen, 0.4, 1.6).value;
            },
            grid);
        CHECK(curve.fitted_slope == doctest::Approx(-0.625).epsilon(1e-10));
    }

    SUBCASE("exact inversion: slope in (-0.625, -0.5), drifting toward -0.5") {
        const RateCurve curve = radius_curve(
            "bennett_exact",
            [&](uint64_t n) {
                const BoundResult r = bennett_uen_radius_exact(0.05, n, kUnit, uen);
                return r.valid ? r.value : std::numeric_limits<double>::quiet_NaN();
            },
            grid);
        CHECK(curve.fitted_slope > -0.625);
        CHECK(curve.fitted_slope < -0.5);
        // saturated small-N points are dropped and reported
        CHECK(curve.dropped.size() >= 1);
        CHECK(curve.dropped.front() == 1000);
        // local slopes increase monotonically toward -1/2
        for (size_t i = 2; i < curve.points.size(); ++i) {
            const auto& a = curve.points[i - 2];
            const auto& b = curve.points[i - 1];
            const auto& c = curve.points[i];
            const double s1 = (std::log(b.xi) - std::log(a.xi)) /
                              (std::log(double(b.n)) - std::log(double(a.n)));
            const double s2 = (std::log(c.xi) - std::log(b.xi)) /
                              (std::log(double(c.n)) - std::log(double(b.n)));
            CHECK(s2 > s1);
            CHECK(s1 < -0.5);
        }
    }

    SUBCASE("fewer than 5 valid points is an error") {
        const auto tiny = log_n_grid(10, 100, 4);
        CHECK_THROWS_AS(
            radius_curve("x", [](uint64_t n) { return 1.0 / double(n); }, tiny),
            std::invalid_argument);
    }
}

TEST_CASE("large_deviation_profile") {
    std::vector<double> x_grid;
    for (int i = 1; i <= 100; ++i) x_grid.push_back(0.125 * double(i) / 100.0);

    SUBCASE("beta below the threshold: rate improves with deviation size") {
        const auto rows = large_deviation_profile(0.4, x_grid);
        REQUIRE(rows.size() == x_grid.size());
        for (size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].gamma < rows[i - 1].gamma);        // exponent decreasing
            CHECK(rows[i].local_rate < rows[i - 1].local_rate);  // rate faster
        }
        // profile equals the exponent function pointwise
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].gamma == gamma_exponent(0.4, rows[i].x));
            CHECK(rows[i].local_rate == -1.0 / rows[i].gamma);
        }
    }

    SUBCASE("x -> 0 end: exponent toward 2, rate toward -1/2") {
        std::vector<double> tiny{1e-10, 1e-8};
        const auto rows = large_deviation_profile(0.4, tiny);
        CHECK(std::abs(rows[1].gamma - 2.0) < 0.02);
        CHECK(std::abs(rows[1].local_rate + 0.5) < 0.01);
    }

    SUBCASE("beta above the threshold: interior minimum in the profile") {
        const auto rows = large_deviation_profile(0.47, x_grid);
        size_t argmin = 0;
        for (size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].gamma < rows[argmin].gamma) argmin = i;
        }
        CHECK(argmin > 0);
        CHECK(argmin < rows.size() - 1);
    }

    CHECK_THROWS_AS(large_deviation_profile(0.0, x_grid), std::domain_error);
}

TEST_CASE("asymptotic_convergence_check verdicts") {
    const auto grid = log_n_grid(100, 100000000ULL, 15);

    SUBCASE("constant entropy: convergent") {
        const auto report = asymptotic_convergence_check(
            [](uint64_t) { return 5.0; }, grid, 0.5, kUnit);
        CHECK(report.verdict == ConvergenceVerdict::Convergent);
        CHECK(report.rows.back().ratio < report.rows.front().ratio);
        CHECK(report.rows.back().log_bound < std::log(1e-6));
    }

    SUBCASE("linear entropy growth: ratio bounded but bound does not vanish") {
        const auto report = asymptotic_convergence_check(
            [](uint64_t n) { return 2.0 * double(n); }, grid, 0.5, kUnit);
        CHECK(report.verdict == ConvergenceVerdict::NonVanishing);
        CHECK(report.rows.front().ratio == doctest::Approx(2.0));
        CHECK(report.rows.back().ratio == doctest::Approx(2.0));
    }

    SUBCASE("square-root entropy growth: convergent") {
        const auto report = asymptotic_convergence_check(
            [](uint64_t n) { return std::sqrt(double(n)); }, grid, 0.5, kUnit);
        CHECK(report.verdict == ConvergenceVerdict::Convergent);
    }

    CHECK_THROWS_AS(asymptotic_convergence_check([](uint64_t) { return 0.0; }, grid,
                                                 -1.0, kUnit),
                    std::domain_error);
}

TEST_CASE("log_n_grid endpoints and monotonicity") {
    const auto grid = log_n_grid(1000, 1000000000ULL, 25);
    CHECK(grid.size() == 25);
    CHECK(grid.front() == 1000);
    CHECK(grid.back() == 1000000000ULL);
    for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
    CHECK_THROWS_AS(log_n_grid(100, 100, 5), std::invalid_argument);
}
