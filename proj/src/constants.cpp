#include "benkit/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "benkit/special_functions.hpp"

namespace benkit {
namespace {

// (x+1)ln(x+1) - x, the negated Bennett exponent.
double u_fn(double x) { return -gamma_fn(x); }

void require_cap(double x_max, const char* who) {
    if (!(x_max > 0.0) || !(x_max <= 1.0)) {
        throw std::domain_error(std::string(who) + ": domain cap must lie in (0, 1]");
    }
}

// Log-spaced grid over [x_max * 1e-6, x_max], endpoint included.
std::vector<double> log_grid(double x_max, uint64_t size) {
    std::vector<double> g(size);
    const double lo = std::log(x_max * 1e-6);
    const double hi = std::log(x_max);
    for (uint64_t i = 0; i < size; ++i) {
        g[i] = std::exp(lo + (hi - lo) * double(i) / double(size - 1));
    }
    g.back() = x_max;
    return g;
}

template <class F>
double golden_min(F&& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while ((b - a) > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Minimizes f over the grid, then refines around the best grid point with
// golden-section search. Returns the best value seen, endpoints included,
// so endpoint extrema come out exact.
template <class F>
double grid_refine_min(F&& f, const std::vector<double>& grid, double tol) {
    size_t best = 0;
    double fbest = f(grid[0]);
    for (size_t i = 1; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v < fbest) { fbest = v; best = i; }
    }
    const double lo = grid[best > 0 ? best - 1 : 0];
    const double hi = grid[best + 1 < grid.size() ? best + 1 : grid.size() - 1];
    if (hi > lo) {
        const double xr = golden_min(f, lo, hi, tol);
        fbest = std::min(fbest, f(xr));
    }
    return fbest;
}

}  // namespace

const char* to_string(GammaShape shape) {
    return shape == GammaShape::MonotoneDecreasing ? "monotone_decreasing"
                                                   : "interior_minimum";
}

double derive_beta_lower(double x_max, uint64_t grid_size, double tol) {
    require_cap(x_max, "derive_beta_lower");
    const auto grid = log_grid(x_max, grid_size);
    // sup u = -min(-u)
    return -grid_refine_min([](double x) { return -u_fn(x); }, grid, tol * x_max);
}

double derive_beta_upper(double x_max, uint64_t grid_size, double tol) {
    require_cap(x_max, "derive_beta_upper");
    const auto grid = log_grid(x_max, grid_size);
    return grid_refine_min([](double x) { return u_fn(x) / (x * x); }, grid, tol * x_max);
}

IntervalReport derive_beta_interval(double x_max, uint64_t grid_size, double tol) {
    IntervalReport report;
    report.lower = derive_beta_lower(x_max, grid_size, tol);
    report.upper = derive_beta_upper(x_max, grid_size, tol);
    report.x_max = x_max;
    report.grid_size = grid_size;
    report.refinement_tolerance = tol;
    return report;
}

MonotonicityReport classify_gamma_monotonicity(double beta, double x_max,
                                               uint64_t grid_size) {
    require_cap(x_max, "classify_gamma_monotonicity");
    if (!(beta > 0.0)) {
        throw std::domain_error("classify_gamma_monotonicity: beta must be positive");
    }
    // The exponent function has a pole at x = 1; stop just short when the
    // cap touches it.
    const double cap = std::min(x_max, 1.0 - 1e-9);
    const auto grid = log_grid(cap, grid_size);

    double max_abs = 0.0;
    std::optional<size_t> first_positive;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double d = gamma_exponent_derivative(beta, grid[i]);
        max_abs = std::max(max_abs, std::abs(d));
        if (d > 0.0 && !first_positive) first_positive = i;
    }
    if (max_abs < 1e-12) {
        throw std::runtime_error(
            "classify_gamma_monotonicity: ambiguous, derivative below 1e-12 across grid");
    }

    MonotonicityReport report;
    report.beta = beta;
    if (!first_positive) {
        report.classification = GammaShape::MonotoneDecreasing;
        return report;
    }

    report.classification = GammaShape::InteriorMinimum;
    const size_t i = *first_positive;
    const double lo = grid[i > 0 ? i - 1 : 0];
    const double hi = grid[i];
    report.minimizer_x =
        golden_min([&](double x) { return gamma_exponent(beta, x); }, lo, hi,
                   1e-12 * cap);
    return report;
}

double find_monotonicity_threshold(double x_max, double tol) {
    require_cap(x_max, "find_monotonicity_threshold");
    const double margin = 1e-6;
    double lo = derive_beta_lower(x_max) + margin;
    double hi = derive_beta_upper(x_max) - margin;
    if (!(lo < hi)) {
        throw std::runtime_error("find_monotonicity_threshold: empty beta interval");
    }
    const auto is_monotone = [&](double beta) {
        return classify_gamma_monotonicity(beta, x_max).classification ==
               GammaShape::MonotoneDecreasing;
    };
    if (!is_monotone(lo) || is_monotone(hi)) {
        throw std::runtime_error(
            "find_monotonicity_threshold: classification does not flip over the interval");
    }
    while ((hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        if (is_monotone(mid)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

LimitReport check_limit_at_zero(double beta, std::span<const double> x_sequence) {
    if (!(beta > 0.0)) {
        throw std::domain_error("check_limit_at_zero: beta must be positive");
    }
    if (x_sequence.empty()) {
        throw std::invalid_argument("check_limit_at_zero: empty sequence");
    }
    for (size_t i = 0; i < x_sequence.size(); ++i) {
        if (!(x_sequence[i] >= 1e-12) || !(x_sequence[i] < 1.0)) {
            throw std::domain_error("check_limit_at_zero: points must lie in [1e-12, 1)");
        }
        if (i > 0 && !(x_sequence[i] < x_sequence[i - 1])) {
            throw std::invalid_argument(
                "check_limit_at_zero: sequence must be strictly decreasing");
        }
    }

    LimitReport report;
    report.beta = beta;
    for (double x : x_sequence) {
        const double g = gamma_exponent(beta, x);
        report.points.push_back({x, g, 2.0 - g});
    }

    report.gap_monotone = true;
    for (size_t i = 2; i < report.points.size(); ++i) {
        if (std::abs(report.points[i].gap) >
            std::abs(report.points[i - 1].gap) * (1.0 + 1e-12)) {
            report.gap_monotone = false;
        }
    }

    const auto& last = report.points.back();
    const double asymptotic = std::log(1.0 / (2.0 * beta)) / std::abs(std::log(last.x));
    report.within_asymptotic = last.gap <= 1.5 * asymptotic + 1e-9;
    return report;
}

CoincidenceReport fig2_coincidence(double beta, std::span<const double> x_grid) {
    if (x_grid.empty()) {
        throw std::invalid_argument("fig2_coincidence: empty grid");
    }
    CoincidenceReport report;
    report.beta = beta;
    for (double x : x_grid) {
        if (!(x >= 0.0) || !(x <= 1.0)) {
            throw std::domain_error("fig2_coincidence: grid must lie within [0, 1]");
        }
        const double z = x / 8.0;
        const double diff = std::abs(std::exp(gamma_fn(z)) - std::exp(-beta * z * z));
        if (diff > report.sup_difference) {
            report.sup_difference = diff;
            report.argmax_x = x;
        }
    }
    return report;
}

}  // namespace benkit
