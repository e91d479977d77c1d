#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "benkit/bounds.hpp"

namespace benkit {

struct RatePoint {
    uint64_t n;
    double xi;
};

// Radius-vs-N curve for one bound family with its fitted log-log slope.
struct RateCurve {
    std::string family;
    std::vector<RatePoint> points;
    double fitted_slope = 0.0;
    double slope_std_error = 0.0;
    uint64_t n_min = 0;
    uint64_t n_max = 0;
    std::vector<uint64_t> dropped;  // N values whose preconditions failed
};

struct SlopeFit {
    double slope;
    double std_error;
};

// OLS slope of ln(xi) against ln(N); stderr from residual variance.
// Requires >= 5 positive points and non-collinear N.
SlopeFit fit_loglog_slope(std::span<const RatePoint> points);

// Evaluates radius_fn over the N grid; non-finite or nonpositive returns
// are dropped and reported. Throws when fewer than 5 points survive.
RateCurve radius_curve(const std::string& family,
                       const std::function<double(uint64_t)>& radius_fn,
                       std::span<const uint64_t> n_grid);

// Log-spaced grid of sample counts, endpoints included.
std::vector<uint64_t> log_n_grid(uint64_t n_min, uint64_t n_max, uint64_t count);

struct ProfileRow {
    double x;
    double gamma;
    double local_rate;  // -1/gamma
};

// (x, gamma(beta1; x), -1/gamma) along the grid: how the decay exponent
// improves with the deviation size.
std::vector<ProfileRow> large_deviation_profile(double beta1,
                                                std::span<const double> x_grid);

enum class ConvergenceVerdict { Convergent, NonVanishing };

const char* to_string(ConvergenceVerdict v);

struct ConvergenceRow {
    uint64_t n;
    double ratio;      // log_uen(N) / N
    double log_bound;  // ln of the entropy tail bound at fixed xi
    double bound;      // exp(log_bound), may under/overflow to 0/inf
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    ConvergenceVerdict verdict = ConvergenceVerdict::NonVanishing;
};

// Diagnostic for entropy growth: tracks log_uen(N)/N and the fixed-xi tail
// bound along the grid. Convergent when the bound falls below 1e-6 and
// below its initial value by the end of the window.
ConvergenceReport asymptotic_convergence_check(
    const std::function<double(uint64_t)>& log_uen_of_n,
    std::span<const uint64_t> n_grid, double xi, const BoundedRange& range);

}  // namespace benkit
