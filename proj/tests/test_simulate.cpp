#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "benkit/bounds.hpp"
#include "benkit/reference.hpp"
#include "benkit/simulate.hpp"
#include "oracle.hpp"

using namespace benkit;

namespace {

const BoundedRange kUnit{0.0, 1.0};

// Exhaustive 2^N-outcome statistics for a two-row class on Bernoulli(p):
// exact Pr{ sup_f (Ef - E_N f) - center >= xi } and Pr{ sup_f |Ef - E_N f| > xi }.
struct ExhaustiveGap {
    std::vector<double> h_values;  // one-sided sup gap per outcome count
    std::vector<double> g_values;  // two-sided sup gap
    std::vector<double> probs;     // binomial weight per count
    double h_mean = 0.0;

    ExhaustiveGap(const FiniteClass& cls, double p, uint64_t n) {
        const auto risks = cls.expected_risks(
            DistributionSpec::bernoulli_scaled(p, cls.range));
        for (uint64_t k = 0; k <= n; ++k) {
            double one = -1e300, two = 0.0;
            for (size_t i = 0; i < cls.values.size(); ++i) {
                const double emp =
                    (double(n - k) * cls.values[i][0] + double(k) * cls.values[i][1]) /
                    double(n);
                one = std::max(one, risks[i] - emp);
                two = std::max(two, std::abs(risks[i] - emp));
            }
            h_values.push_back(one);
            g_values.push_back(two);
            probs.push_back(oracle::binomial_pmf(n, k, p));
            h_mean += probs.back() * one;
        }
    }

    double h_tail(double center, double xi) const {
        double acc = 0.0;
        for (size_t k = 0; k < h_values.size(); ++k) {
            if (h_values[k] - center >= xi) acc += probs[k];
        }
        return acc;
    }

    double g_tail(double xi) const {
        double acc = 0.0;
        for (size_t k = 0; k < g_values.size(); ++k) {
            if (g_values[k] > xi) acc += probs[k];
        }
        return acc;
    }
};

}  // namespace

TEST_CASE("DistributionSpec validation and exact means") {
    CHECK_THROWS_AS(DistributionSpec::bernoulli_scaled(0.0, kUnit), std::domain_error);
    CHECK_THROWS_AS(DistributionSpec::bernoulli_scaled(1.0, kUnit), std::domain_error);
    CHECK(DistributionSpec::bernoulli_scaled(0.3, kUnit).mean() == doctest::Approx(0.3));
    CHECK(DistributionSpec::bernoulli_scaled(0.3, BoundedRange(2.0, 4.0)).mean() ==
          doctest::Approx(2.6));
    CHECK(DistributionSpec::uniform(BoundedRange(-1.0, 3.0)).mean() == doctest::Approx(1.0));

    const auto disc = DistributionSpec::discrete_weighted({0.0, 0.5, 1.0},
                                                          {0.25, 0.5, 0.25}, kUnit);
    CHECK(disc.mean() == doctest::Approx(0.5));
    CHECK(disc.support_size() == 3);
    CHECK_THROWS_AS(
        DistributionSpec::discrete_weighted({0.0, 2.0}, {0.5, 0.5}, kUnit),
        std::domain_error);
    CHECK_THROWS_AS(
        DistributionSpec::discrete_weighted({0.0, 1.0}, {0.5, 0.6}, kUnit),
        std::domain_error);
    CHECK_THROWS_AS(DistributionSpec::uniform(kUnit).support_size(), std::domain_error);
}

TEST_CASE("sum_tail_mc matches the exact binomial tail") {
    // Bernoulli(0.5), N=10: Pr{|Bin - 5| > 3} = 22/1024 = 0.021484375
    const auto dist = DistributionSpec::bernoulli_scaled(0.5, kUnit);
    const std::vector<double> grid{0.5, 1.5, 3.0, 5.5};
    const McConfig cfg{200000, 13, 1};
    const TailCurve curve = sum_tail_mc(dist, 10, grid, cfg);

    CHECK(oracle::binomial_abs_tail(10, 0.5, 3.0) == doctest::Approx(0.021484375));
    for (size_t j = 0; j < grid.size(); ++j) {
        const double exact = oracle::binomial_abs_tail(10, 0.5, grid[j]);
        CHECK(std::abs(curve.points[j].probability - exact) <=
              3.0 * curve.points[j].std_error + 1e-12);
    }

    // probability ~1 near zero for a spread-out distribution
    const auto uni = DistributionSpec::uniform(kUnit);
    const TailCurve near0 = sum_tail_mc(uni, 10, std::vector<double>{1e-6}, cfg);
    CHECK(near0.points[0].probability > 0.99);

    // deviation cannot exceed the total range
    const TailCurve deep =
        sum_tail_mc(dist, 10, std::vector<double>{9.99}, McConfig{20000, 5, 1});
    CHECK(deep.points[0].probability == 0.0);

    // grid must stay inside (0, N(b-a))
    CHECK_THROWS_AS(sum_tail_mc(dist, 10, std::vector<double>{10.0}, cfg),
                    std::domain_error);
    CHECK_THROWS_AS(sum_tail_mc(dist, 10, std::vector<double>{0.5, 0.5}, cfg),
                    std::invalid_argument);
}

TEST_CASE("sum_tail_mc determinism and curve shape") {
    const auto dist = DistributionSpec::bernoulli_scaled(0.05, kUnit);
    std::vector<double> grid;
    for (int j = 1; j <= 12; ++j) grid.push_back(0.4 * double(j));

    const McConfig w1{50000, 99, 1};
    McConfig w8 = w1;
    w8.workers = 8;
    const TailCurve c1 = sum_tail_mc(dist, 50, grid, w1);
    const TailCurve c8 = sum_tail_mc(dist, 50, grid, w8);
    REQUIRE(c1.points.size() == c8.points.size());
    for (size_t j = 0; j < c1.points.size(); ++j) {
        CHECK(c1.points[j].probability == c8.points[j].probability);
        CHECK(c1.points[j].std_error == c8.points[j].std_error);
    }

    // bit-identical to the plain serial reference loop (integer counts)
    const TailCurve ref = reference::sum_tail_mc(dist, 50, grid, w1);
    for (size_t j = 0; j < c1.points.size(); ++j) {
        CHECK(c1.points[j].probability == ref.points[j].probability);
    }

    // nonincreasing in xi, all within [0, 1]
    for (size_t j = 0; j + 1 < c1.points.size(); ++j) {
        CHECK(c1.points[j].probability >= c1.points[j + 1].probability);
        CHECK(c1.points[j].probability >= 0.0);
        CHECK(c1.points[j].probability <= 1.0);
    }
}

TEST_CASE("FiniteClass validation and exact risks") {
    CHECK_THROWS_AS(FiniteClass({}, kUnit), std::invalid_argument);
    CHECK_THROWS_AS(FiniteClass({{0.5, 1.5}}, kUnit), std::invalid_argument);
    const FiniteClass cls({{0.0, 1.0}, {1.0, 0.0}}, kUnit);
    const auto dist = DistributionSpec::bernoulli_scaled(0.3, kUnit);
    const auto risks = cls.expected_risks(dist);
    CHECK(risks[0] == doctest::Approx(0.3));
    CHECK(risks[1] == doctest::Approx(0.7));
    CHECK_THROWS_AS(cls.expected_risks(DistributionSpec::uniform(kUnit)),
                    std::domain_error);
}

TEST_CASE("bdiff_tail_mc singleton class reduces to the one-sided sum tail") {
    // Single f = identity: H = Ef - E_N f = (p N - S)/N, E{H} = 0.
    const double p = 0.4;
    const uint64_t n = 12;
    const FiniteClass cls({{0.0, 1.0}}, kUnit);
    const auto dist = DistributionSpec::bernoulli_scaled(p, kUnit);
    const std::vector<double> grid{0.05, 0.1, 0.2, 0.3};
    const McConfig cfg{100000, 7, 2};
    const BdiffCurveResult r = bdiff_tail_mc(cls, dist, n, grid, cfg);

    // pilot mean of H is 0 exactly; the estimate sits within a few stderr
    CHECK(std::abs(r.center.mean) <= 5.0 * r.center.std_error + 1e-12);
    CHECK(r.center.trials >= 10 * cfg.trials);

    for (size_t j = 0; j < grid.size(); ++j) {
        // exact one-sided binomial tail: Pr{pN - S >= N(xi + center)}
        const double exact =
            oracle::binomial_lower_tail(n, p, double(n) * (grid[j] + r.center.mean));
        CHECK(std::abs(r.curve.points[j].probability - exact) <=
              3.0 * r.curve.points[j].std_error + 2e-3);
    }
}

TEST_CASE("bdiff_tail_mc two-function class vs exhaustive enumeration") {
    const double p = 0.5;
    const uint64_t n = 14;
    const FiniteClass cls({{0.0, 1.0}, {1.0, 0.0}}, kUnit);
    const auto dist = DistributionSpec::bernoulli_scaled(p, kUnit);
    const ExhaustiveGap oracle_gap(cls, p, n);

    std::vector<double> grid;
    for (int j = 1; j <= 8; ++j) grid.push_back(0.05 * double(j));
    const McConfig cfg{150000, 23, 1};
    const BdiffCurveResult r = bdiff_tail_mc(cls, dist, n, grid, cfg);

    // pilot mean against the exact E{H}
    CHECK(std::abs(r.center.mean - oracle_gap.h_mean) <= 4.0 * r.center.std_error + 1e-12);

    for (size_t j = 0; j < grid.size(); ++j) {
        const double exact = oracle_gap.h_tail(r.center.mean, grid[j]);
        CHECK(std::abs(r.curve.points[j].probability - exact) <=
              3.0 * r.curve.points[j].std_error + 2e-3);
    }

    // empirical curve below the bounded-difference bound with slack
    TailCurve bound;
    bound.source = "bennett_bdiff";
    for (double xi : grid) {
        bound.points.push_back({xi, bennett_bdiff_tail(xi, n, 1.0 / double(n)).value, 0.0});
    }
    const ValidityReport report = check_bound_validity(r.curve, bound, 3.0);
    CHECK(report.pass);

    // continuous distributions are rejected (no exact risks)
    CHECK_THROWS_AS(
        bdiff_tail_mc(cls, DistributionSpec::uniform(kUnit), n, grid, cfg),
        std::domain_error);
}

TEST_CASE("generalization_gap_mc vs exhaustive enumeration") {
    const double p = 0.35;
    const uint64_t n = 8;
    // four-function class on a two-point support
    const FiniteClass cls({{0.0, 1.0}, {1.0, 0.0}, {0.2, 0.9}, {0.65, 0.1}}, kUnit);
    const auto dist = DistributionSpec::bernoulli_scaled(p, kUnit);
    const ExhaustiveGap oracle_gap(cls, p, n);

    std::vector<double> grid;
    for (int j = 1; j <= 10; ++j) grid.push_back(0.07 * double(j));
    const McConfig cfg{120000, 41, 4};
    const TailCurve curve = generalization_gap_mc(cls, dist, n, grid, cfg);

    for (size_t j = 0; j < grid.size(); ++j) {
        const double exact = oracle_gap.g_tail(grid[j]);
        CHECK(std::abs(curve.points[j].probability - exact) <=
              3.0 * curve.points[j].std_error + 2e-3);
    }

    // gap cannot exceed the range width
    const TailCurve beyond =
        generalization_gap_mc(cls, dist, n, std::vector<double>{1.01}, McConfig{5000, 3, 1});
    CHECK(beyond.points[0].probability == 0.0);

    // single-function class reduces to a centered-mean tail
    const FiniteClass single({{0.0, 1.0}}, kUnit);
    const TailCurve sc =
        generalization_gap_mc(single, dist, 10, std::vector<double>{0.2}, McConfig{100000, 9, 1});
    const double exact_mean_tail =
        oracle::binomial_abs_tail(10, p, 10.0 * 0.2);
    CHECK(std::abs(sc.points[0].probability - exact_mean_tail) <=
          3.0 * sc.points[0].std_error + 1e-3);
}

TEST_CASE("generalization_gap_mc on a 3-point distribution vs multinomial enumeration") {
    // four functions on a three-point support, N = 8: the exact tail comes
    // from summing multinomial weights over all (k0, k1, k2) outcomes
    const uint64_t n = 8;
    const std::vector<double> pts{0.0, 0.4, 1.0};
    const std::vector<double> wts{0.3, 0.45, 0.25};
    const auto dist = DistributionSpec::discrete_weighted(pts, wts, kUnit);
    const FiniteClass cls(
        {{0.0, 0.4, 1.0}, {1.0, 0.6, 0.0}, {0.2, 0.9, 0.35}, {0.65, 0.1, 0.8}}, kUnit);
    const auto risks = cls.expected_risks(dist);

    const auto exact_gap_tail = [&](double xi) {
        double acc = 0.0;
        double lf[9];
        lf[0] = 0.0;
        for (int i = 1; i <= 8; ++i) lf[i] = lf[i - 1] + std::log(double(i));
        for (uint64_t k0 = 0; k0 <= n; ++k0) {
            for (uint64_t k1 = 0; k1 + k0 <= n; ++k1) {
                const uint64_t k2 = n - k0 - k1;
                const double logw = lf[n] - lf[k0] - lf[k1] - lf[k2] +
                                    double(k0) * std::log(wts[0]) +
                                    double(k1) * std::log(wts[1]) +
                                    double(k2) * std::log(wts[2]);
                double gap = 0.0;
                for (size_t i = 0; i < cls.values.size(); ++i) {
                    const double emp = (double(k0) * cls.values[i][0] +
                                        double(k1) * cls.values[i][1] +
                                        double(k2) * cls.values[i][2]) /
                                       double(n);
                    gap = std::max(gap, std::abs(risks[i] - emp));
                }
                if (gap > xi) acc += std::exp(logw);
            }
        }
        return acc;
    };

    std::vector<double> grid;
    for (int j = 1; j <= 8; ++j) grid.push_back(0.08 * double(j));
    const TailCurve curve =
        generalization_gap_mc(cls, dist, n, grid, McConfig{150000, 67, 2});
    for (size_t j = 0; j < grid.size(); ++j) {
        CHECK(std::abs(curve.points[j].probability - exact_gap_tail(grid[j])) <=
              3.0 * curve.points[j].std_error + 2e-3);
    }
}

TEST_CASE("generalization_gap_mc determinism across workers") {
    const FiniteClass cls({{0.0, 1.0}, {1.0, 0.0}}, kUnit);
    const auto dist = DistributionSpec::bernoulli_scaled(0.5, kUnit);
    const std::vector<double> grid{0.1, 0.2, 0.3};
    const McConfig w1{30000, 77, 1};
    McConfig w5 = w1;
    w5.workers = 5;
    const TailCurve c1 = generalization_gap_mc(cls, dist, 20, grid, w1);
    const TailCurve c5 = generalization_gap_mc(cls, dist, 20, grid, w5);
    for (size_t j = 0; j < grid.size(); ++j) {
        CHECK(c1.points[j].probability == c5.points[j].probability);
    }
    const TailCurve ref = reference::generalization_gap_mc(cls, dist, 20, grid, w1);
    for (size_t j = 0; j < grid.size(); ++j) {
        CHECK(c1.points[j].probability == ref.points[j].probability);
    }
}

TEST_CASE("check_bound_validity") {
    TailCurve emp;
    emp.source = "empirical";
    emp.points = {{0.1, 0.5, 0.01}, {0.2, 0.2, 0.01}, {0.3, 0.05, 0.005}};

    // bound identically 1: trivial pass
    TailCurve ones;
    ones.source = "bound";
    ones.points = {{0.1, 1.0, 0.0}, {0.2, 1.0, 0.0}, {0.3, 1.0, 0.0}};
    const ValidityReport trivial = check_bound_validity(emp, ones, 3.0);
    CHECK(trivial.pass);
    CHECK(trivial.points[0].tightness == doctest::Approx(2.0));

    // bound equal to the empirical curve with zero stderr: non-strict pass
    const ValidityReport equal = check_bound_validity(emp, emp, 0.0);
    CHECK(equal.pass);

    // a failing point is reported
    TailCurve low = ones;
    low.points[1].probability = 0.1;
    const ValidityReport fail = check_bound_validity(emp, low, 3.0);
    CHECK_FALSE(fail.pass);
    CHECK(fail.points[1].pass == false);
    CHECK(fail.points[0].pass);

    // mismatched grids are rejected
    TailCurve other = ones;
    other.points[2].xi = 0.35;
    CHECK_THROWS_AS(check_bound_validity(emp, other, 3.0), std::invalid_argument);
    TailCurve shorter = ones;
    shorter.points.pop_back();
    CHECK_THROWS_AS(check_bound_validity(emp, shorter, 3.0), std::invalid_argument);
}

TEST_CASE("tightness comparison between bound families is emitted, not asserted") {
    // Low-variance regime: the entropy-based Hoeffding and Bennett tails are
    // both valid; their ratio ordering is reported downstream only.
    const FiniteClass cls({{0.0, 1.0}, {1.0, 0.0}}, kUnit);
    const auto dist = DistributionSpec::bernoulli_scaled(0.05, kUnit);
    const std::vector<double> grid{0.2, 0.4, 0.6};
    const TailCurve emp = generalization_gap_mc(cls, dist, 100, grid, McConfig{50000, 11, 1});

    TailCurve hoeff, benn;
    hoeff.source = "hoeffding_uen";
    benn.source = "bennett_uen";
    for (double xi : grid) {
        hoeff.points.push_back(
            {xi, hoeffding_uen_tail(xi, 100, kUnit, UenValue(std::log(2.0))).value, 0.0});
        benn.points.push_back(
            {xi, bennett_uen_tail(xi, 100, kUnit, UenValue(std::log(2.0))).value, 0.0});
    }
    const ValidityReport h = check_bound_validity(emp, hoeff, 3.0);
    const ValidityReport b = check_bound_validity(emp, benn, 3.0);
    CHECK(h.pass);
    CHECK(b.pass);
    for (size_t j = 0; j < grid.size(); ++j) {
        if (emp.points[j].probability > 0.0) {
            CHECK(std::isfinite(h.points[j].tightness));
            CHECK(std::isfinite(b.points[j].tightness));
        }
    }
}
