#include "benkit/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "benkit/special_functions.hpp"

namespace benkit {

SlopeFit fit_loglog_slope(std::span<const RatePoint> points) {
    if (points.size() < 5) {
        throw std::invalid_argument("fit_loglog_slope: needs at least 5 points");
    }
    const double n = double(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& p : points) {
        if (!(p.n > 0) || !(p.xi > 0.0)) {
            throw std::domain_error("fit_loglog_slope: points must be positive");
        }
        sx += std::log(double(p.n));
        sy += std::log(p.xi);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        const double dx = std::log(double(p.n)) - mx;
        const double dy = std::log(p.xi) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("fit_loglog_slope: degenerate N values");
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (const auto& p : points) {
        const double dx = std::log(double(p.n)) - mx;
        const double dy = std::log(p.xi) - my;
        const double r = dy - slope * dx;
        ssr += r * r;
    }
    const double sigma2 = ssr / (n - 2.0);
    return {slope, std::sqrt(sigma2 / sxx)};
}

RateCurve radius_curve(const std::string& family,
                       const std::function<double(uint64_t)>& radius_fn,
                       std::span<const uint64_t> n_grid) {
    RateCurve curve;
    curve.family = family;
    for (size_t i = 0; i < n_grid.size(); ++i) {
        if (i > 0 && !(n_grid[i] > n_grid[i - 1])) {
            throw std::invalid_argument("radius_curve: N grid must be strictly increasing");
        }
        const double xi = radius_fn(n_grid[i]);
        if (std::isfinite(xi) && xi > 0.0) {
            curve.points.push_back({n_grid[i], xi});
        } else {
            curve.dropped.push_back(n_grid[i]);
        }
    }
    if (curve.points.size() < 5) {
        throw std::invalid_argument("radius_curve: fewer than 5 valid points");
    }
    const SlopeFit fit = fit_loglog_slope(curve.points);
    curve.fitted_slope = fit.slope;
    curve.slope_std_error = fit.std_error;
    curve.n_min = curve.points.front().n;
    curve.n_max = curve.points.back().n;
    return curve;
}

std::vector<uint64_t> log_n_grid(uint64_t n_min, uint64_t n_max, uint64_t count) {
    if (n_min < 1 || n_max <= n_min || count < 2) {
        throw std::invalid_argument("log_n_grid: invalid window");
    }
    std::vector<uint64_t> grid;
    grid.reserve(count);
    const double lo = std::log(double(n_min));
    const double hi = std::log(double(n_max));
    for (uint64_t i = 0; i < count; ++i) {
        const double v = std::exp(lo + (hi - lo) * double(i) / double(count - 1));
        uint64_t n = (uint64_t)std::llround(v);
        if (!grid.empty() && n <= grid.back()) n = grid.back() + 1;
        grid.push_back(n);
    }
    grid.back() = n_max;
    return grid;
}

std::vector<ProfileRow> large_deviation_profile(double beta1,
                                                std::span<const double> x_grid) {
    if (!(beta1 > 0.0)) {
        throw std::domain_error("large_deviation_profile: beta1 must be positive");
    }
    std::vector<ProfileRow> rows;
    rows.reserve(x_grid.size());
    for (double x : x_grid) {
        const double g = gamma_exponent(beta1, x);
        rows.push_back({x, g, -1.0 / g});
    }
    return rows;
}

const char* to_string(ConvergenceVerdict v) {
    return v == ConvergenceVerdict::Convergent ? "CONVERGENT" : "NON-VANISHING";
}

ConvergenceReport asymptotic_convergence_check(
    const std::function<double(uint64_t)>& log_uen_of_n,
    std::span<const uint64_t> n_grid, double xi, const BoundedRange& range) {
    if (n_grid.size() < 2) {
        throw std::invalid_argument("asymptotic_convergence_check: needs >= 2 grid points");
    }
    if (!(xi > 0.0)) {
        throw std::domain_error("asymptotic_convergence_check: xi must be positive");
    }
    const double gx = gamma_fn(xi / (8.0 * range.width()));
    ConvergenceReport report;
    for (size_t i = 0; i < n_grid.size(); ++i) {
        if (i > 0 && !(n_grid[i] > n_grid[i - 1])) {
            throw std::invalid_argument(
                "asymptotic_convergence_check: N grid must be increasing");
        }
        const uint64_t n = n_grid[i];
        const double log_uen = log_uen_of_n(n);
        const double log_bound = std::log(8.0) + log_uen + double(n) * gx;
        report.rows.push_back({n, log_uen / double(n), log_bound, std::exp(log_bound)});
    }
    const double first = report.rows.front().log_bound;
    const double last = report.rows.back().log_bound;
    report.verdict = (last < first && last < std::log(1e-6))
                         ? ConvergenceVerdict::Convergent
                         : ConvergenceVerdict::NonVanishing;
    return report;
}

}  // namespace benkit
