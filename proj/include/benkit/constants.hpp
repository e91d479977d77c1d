#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace benkit {

// Interval of exponent-equation coefficients beta for which
// 0 < gamma_exponent(beta; x) < 2 holds on all of (0, x_max]:
//   lower = sup_x [(x+1)ln(x+1) - x]         (the gamma > 0 side)
//   upper = inf_x [((x+1)ln(x+1) - x)/x^2]   (the gamma < 2 side)
// Both are found numerically by grid sweep plus golden-section refinement;
// no monotonicity is assumed.
struct IntervalReport {
    double lower = 0.0;
    double upper = 0.0;
    double x_max = 0.0;
    uint64_t grid_size = 0;
    double refinement_tolerance = 0.0;
};

double derive_beta_lower(double x_max, uint64_t grid_size = 10000, double tol = 1e-10);
double derive_beta_upper(double x_max, uint64_t grid_size = 10000, double tol = 1e-10);
IntervalReport derive_beta_interval(double x_max, uint64_t grid_size = 10000,
                                    double tol = 1e-10);

enum class GammaShape { MonotoneDecreasing, InteriorMinimum };

const char* to_string(GammaShape shape);

struct MonotonicityReport {
    double beta = 0.0;
    GammaShape classification = GammaShape::MonotoneDecreasing;
    std::optional<double> minimizer_x;  // present iff InteriorMinimum
};

// Classifies x -> gamma_exponent(beta; x) on (0, x_max] from the sign
// pattern of its analytic derivative on a dense grid. Throws when the
// derivative is below 1e-12 in magnitude across the whole grid (ambiguous).
MonotonicityReport classify_gamma_monotonicity(double beta, double x_max,
                                               uint64_t grid_size = 10000);

// Bisection over beta on the classification boundary within the derived
// interval. Throws when the classification does not flip across it.
double find_monotonicity_threshold(double x_max, double tol = 1e-10);

struct LimitPoint {
    double x;
    double gamma;
    double gap;  // 2 - gamma
};

struct LimitReport {
    double beta = 0.0;
    std::vector<LimitPoint> points;
    // |gap| nonincreasing from the third point on.
    bool gap_monotone = false;
    // final gap <= 1.5 * ln(1/(2 beta)) / |ln x_last|, the small-x expansion
    // with 50% headroom.
    bool within_asymptotic = false;
};

// Tracks gamma_exponent(beta; x) along a decreasing sequence x -> 0+ and
// checks convergence of the exponent toward 2.
LimitReport check_limit_at_zero(double beta, std::span<const double> x_sequence);

struct CoincidenceReport {
    double beta = 0.0;
    double sup_difference = 0.0;
    double argmax_x = 0.0;
};

// sup over the grid of |exp(G(x/8)) - exp(-beta (x/8)^2)|: how closely the
// quadratic-exponent curve shadows the exact one (the fig2.csv content).
CoincidenceReport fig2_coincidence(double beta, std::span<const double> x_grid);

}  // namespace benkit
