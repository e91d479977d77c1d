#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace benkit {

// Function-value range [a, b] with a < b.
struct BoundedRange {
    double a;
    double b;
    BoundedRange(double a_, double b_);
    double width() const { return b - a; }
};

enum class UenSource { Measured, Analytic, UserSupplied };

// log covering number at radius xi/8 over a 2N-point dataset, the quantity
// the entropy-based tail bounds consume. Nonnegative: a cover has at least
// one element.
struct UenValue {
    double log_uen = 0.0;
    UenSource source = UenSource::UserSupplied;
    UenValue() = default;
    UenValue(double log_uen_, UenSource source_ = UenSource::UserSupplied);
};

enum class BoundFamily {
    HoeffdingUEN,
    BennettSum,
    BennettBdiff,
    BennettUEN,
    BernsteinAltUEN,
    BennettAltUEN,
    RademacherClassical,
    RademacherBennett,
};

const char* to_string(BoundFamily family);

// One evaluated bound. Probability-valued results are clipped to [0, 1] in
// `value`; `value_raw` keeps the unclipped formula output (rate analysis
// needs the raw curve). `valid` is false when a stated precondition failed;
// the number is still computed.
struct BoundResult {
    double value = 0.0;
    double value_raw = 0.0;
    BoundFamily family{};
    bool valid = true;
};

// --- Tail bounds (deviation -> probability) ---

// 8 e^{log_uen} exp(-N xi^2 / (32 (b-a)^2)); flagged when N < 8(b-a)^2/xi^2.
BoundResult hoeffding_uen_tail(double xi, uint64_t n, const BoundedRange& range,
                               const UenValue& uen);

// Two-sided sum deviation: 2 exp(N G(xi / (N(b-a)))) for 0 < xi < N(b-a).
BoundResult bennett_sum_tail(double xi, uint64_t n, const BoundedRange& range);

// One-sided bound under the bounded-difference condition with constant c:
// exp(N G(xi / (N c))).
BoundResult bennett_bdiff_tail(double xi, uint64_t n, double c);

// 8 e^{log_uen} exp(N G(xi / (8(b-a)))); flagged when xi > b-a or
// N < 8(b-a)^2/xi^2.
BoundResult bennett_uen_tail(double xi, uint64_t n, const BoundedRange& range,
                             const UenValue& uen);

// --- Radii (confidence -> deviation) ---

// (b-a) sqrt(32 (log_uen - ln(eps/8)) / N); inverts hoeffding_uen_tail
// exactly.
double hoeffding_uen_radius(double eps, uint64_t n, const BoundedRange& range,
                            const UenValue& uen);

// 4(b-a)L/(3N) + (b-a) sqrt(2L/N) with L = log_uen - ln(eps/8). Closed-form
// but rate N^{-1/2}.
double bernstein_uen_radius(double eps, uint64_t n, const BoundedRange& range,
                            const UenValue& uen);

// 8(b-a) (L / (beta1 N))^{1/gamma_exp}; rate N^{-1/gamma_exp}. Flagged when
// gamma_exp is outside (0, 2) or beta1 outside (0.0075, 0.4804).
BoundResult bennett_alt_radius(double eps, uint64_t n, const BoundedRange& range,
                               const UenValue& uen, double beta1, double gamma_exp);

// Exact numeric inversion of bennett_uen_tail via gamma_inverse:
// xi = 8(b-a) gamma_inverse((ln(eps/8) - log_uen)/N). When the required
// normalized argument exceeds 1/8 (deviation beyond b-a) the result is
// flagged and `value` saturates at b-a; `value_raw` keeps the unsaturated
// radius.
BoundResult bennett_uen_radius_exact(double eps, uint64_t n, const BoundedRange& range,
                                     const UenValue& uen);

// --- Risk bounds via Rademacher complexity ---

// E_N f + 2 R + (b-a) sqrt(ln(1/eps)/N), or the empirical variant
// E_N f + 2 R_N + 3(b-a) sqrt(ln(2/eps)/(2N)).
double rademacher_bound_classical(double emp_risk, double rad, double emp_rad,
                                  uint64_t n, const BoundedRange& range, double eps,
                                  bool use_empirical);

// E_N f + 2 R + (b-a) (ln(1/eps)/(beta2 N))^{1/gamma_exp}, or the empirical
// variant with coefficient 3 and ln(2/eps). Flagged when beta2 is outside
// (0.0075, 0.3863) or gamma_exp outside (0, 2).
BoundResult rademacher_bound_bennett(double emp_risk, double rad, double emp_rad,
                                     uint64_t n, const BoundedRange& range, double eps,
                                     double beta2, double gamma_exp, bool use_empirical);

enum class RadBoundFamily { Hoeffding, Bennett };

// Population Rademacher complexity from the empirical one:
// emp_rad + (b-a) sqrt(ln(2/eps)/(2N)), or
// emp_rad + (b-a) (ln(2/eps)/(beta2 N))^{1/gamma_exp}.
BoundResult rad_population_from_empirical(double emp_rad, uint64_t n,
                                           const BoundedRange& range, double eps,
                                           RadBoundFamily family, double beta2,
                                           double gamma_exp);

// Entropy-integral upper bound on the empirical Rademacher complexity:
// min over eps_grid of 4 eps + 12 Integral_eps^{xi_max} sqrt(cover_log(t)/N) dt.
// covering_log_fn must be nonincreasing; throws std::invalid_argument if a
// sampled violation is detected.
double dudley_upper_bound(const std::function<double(double)>& covering_log_fn,
                          uint64_t n, std::span<const double> eps_grid, double xi_max);

// Sudakov-style lower-shape diagnostic with its unspecified constant set to
// 1: (1/ln N) sup_alpha alpha sqrt(cover_log(alpha)/N) over the grid. Shape
// only -- unnormalized, never asserted against the Rademacher complexity.
double sudakov_lower_shape(const std::function<double(double)>& covering_log_fn,
                           uint64_t n, std::span<const double> alpha_grid);

}  // namespace benkit
