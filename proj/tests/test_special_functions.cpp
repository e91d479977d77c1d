#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "benkit/special_functions.hpp"
#include "oracle.hpp"

using namespace benkit;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        g[i] = std::exp(llo + (lhi - llo) * double(i) / double(count - 1));
    }
    return g;
}

}  // namespace

TEST_CASE("gamma_fn closed-form points") {
    CHECK(gamma_fn(0.0) == 0.0);
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0 - 2.0 * std::log(2.0)).epsilon(1e-15));
    // 1/8 - (9/8) ln(9/8), frozen from the long-double series oracle
    CHECK(gamma_fn(0.125) == doctest::Approx(-0.0075059151134313864).epsilon(1e-12));
}

TEST_CASE("gamma_fn domain errors") {
    CHECK_THROWS_AS(gamma_fn(-1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(std::nan("")), std::domain_error);
    // negative arguments above -1 are fine; 0 is the unique maximum
    CHECK(gamma_fn(-0.5) < 0.0);
    CHECK(std::isfinite(gamma_fn(-0.999)));
}

TEST_CASE("gamma_fn matches the long-double oracle across the range") {
    for (double x : log_grid(1e-9, 1e3, 300)) {
        const double expected = (double)oracle::gamma_ld((long double)x);
        CHECK(gamma_fn(x) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("gamma_fn strictly decreasing for x >= 0") {
    const auto grid = log_grid(1e-8, 1e2, 200);
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        CHECK(gamma_fn(grid[i]) > gamma_fn(grid[i + 1]));
    }
    CHECK(gamma_fn(0.0) > gamma_fn(grid.front()));
}

TEST_CASE("gamma_fn continuous across the series cutoff") {
    // The genuine change between the probes is ~2e-12; no seam jump beyond it.
    const double below = gamma_fn(0.9999e-4);
    const double above = gamma_fn(1.0001e-4);
    CHECK(below > above);
    CHECK(std::abs(below - above) < 5e-12);
}

TEST_CASE("gamma_inverse identities") {
    CHECK(gamma_inverse(0.0) == 0.0);
    CHECK(gamma_inverse(1.0 - 2.0 * std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_inverse(gamma_fn(0.05)) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_inverse(0.1), std::domain_error);
}

TEST_CASE("gamma_inverse round-trips on the log grid") {
    for (double x : log_grid(1e-8, 1e3, 120)) {
        const double y = gamma_fn(x);
        const double back = gamma_inverse(y);
        CHECK(back == doctest::Approx(x).epsilon(1e-10));
        // forward residual, relative to |y|
        CHECK(std::abs(gamma_fn(back) - y) <= 1e-12 * std::max(1.0, std::abs(y)));
    }
}

TEST_CASE("gamma_exponent closed-form points") {
    // beta equal to the numerator makes the outer log vanish
    const double x0 = 0.0625;
    const double beta0 = -gamma_fn(x0);
    CHECK(gamma_exponent(beta0, x0) == doctest::Approx(0.0).epsilon(1e-12));

    // beta = 64 * ((9/8)ln(9/8) - 1/8) gives exponent exactly 2 at x = 1/8
    const double beta2 = -gamma_fn(0.125) * 64.0;
    CHECK(beta2 == doctest::Approx(0.48037856725960873).epsilon(1e-12));
    CHECK(gamma_exponent(beta2, 0.125) == doctest::Approx(2.0).epsilon(1e-9));

    // small-x limit: exponent near 2
    const double g = gamma_exponent(0.1, 1e-6);
    CHECK(std::abs(g - 2.0) < 0.2);
    CHECK(g == doctest::Approx(1.8835050234047934).epsilon(1e-9));
}

TEST_CASE("gamma_exponent domain errors and pole flag") {
    CHECK_THROWS_AS(gamma_exponent(0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_exponent(0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_exponent(0.1, -0.5), std::domain_error);
    CHECK_THROWS_AS(gamma_exponent(0.1, 1.5), std::domain_error);
    CHECK_THROWS_AS(gamma_exponent(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(gamma_exponent(-1.0, 0.5), std::domain_error);

    CHECK(gamma_exponent_checked(0.1, 0.5).reliable);
    CHECK_FALSE(gamma_exponent_checked(0.1, 1.0 - 1e-12).reliable);
}

TEST_CASE("gamma_exponent satisfies its defining equation") {
    for (double beta : {0.01, 0.1, 0.3, 0.48, 0.7}) {
        for (double x : log_grid(1e-7, 0.9, 60)) {
            const double g = gamma_exponent(beta, x);
            const double lhs = gamma_fn(x);
            const double rhs = -beta * std::pow(x, g);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
        }
    }
}

TEST_CASE("exponent chain: gamma_fn(x) <= -beta x^g for g in [gamma, 2)") {
    for (double beta : {0.1, 0.3, 0.45}) {
        for (double x : log_grid(1e-5, 0.124, 40)) {
            const double g = gamma_exponent(beta, x);
            if (!(g < 2.0)) continue;
            for (double t : {0.0, 0.25, 0.5, 0.75, 0.999}) {
                const double gt = g + t * (2.0 - g);
                CHECK(gamma_fn(x) <= -beta * std::pow(x, gt) + 1e-15);
            }
        }
    }
}

TEST_CASE("gamma_exponent_derivative matches finite differences") {
    // Cross-check only: central FD with h = 1e-7 x carries double-precision
    // noise around 1e-5 relative, so the tolerance stays coarse.
    for (double beta : {0.1, 0.44, 0.47}) {
        for (double x : {0.001, 0.01, 0.05, 0.1, 0.124}) {
            const double h = 1e-7 * x;
            const double fd =
                (gamma_exponent(beta, x + h) - gamma_exponent(beta, x - h)) / (2.0 * h);
            const double an = gamma_exponent_derivative(beta, x);
            CHECK(an == doctest::Approx(fd).epsilon(1e-3));
        }
    }
    // Frozen high-precision spot value
    CHECK(gamma_exponent_derivative(0.1, 0.001) ==
          doctest::Approx(-33.6735512339).epsilon(1e-9));
}

TEST_CASE("bernstein_approx values and envelope") {
    CHECK(bernstein_approx(0.0) == 0.0);
    CHECK(bernstein_approx(3.0) == doctest::Approx(-2.25).epsilon(1e-15));
    CHECK_THROWS_AS(bernstein_approx(-0.1), std::domain_error);
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.01 * double(i);
        const double b = bernstein_approx(x);
        CHECK(gamma_fn(x) <= b);
        CHECK(b <= 0.0);
    }
}

TEST_CASE("gamma_fn_derivative is -log1p") {
    CHECK(gamma_fn_derivative(0.0) == 0.0);
    CHECK(gamma_fn_derivative(1.0) == doctest::Approx(-std::log(2.0)));
    CHECK_THROWS_AS(gamma_fn_derivative(-1.0), std::domain_error);
}
