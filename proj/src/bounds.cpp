#include "benkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "benkit/special_functions.hpp"

namespace benkit {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_confidence(double eps, const char* who) {
    if (!(eps > 0.0) || !(eps < 1.0)) {
        throw std::domain_error(std::string(who) + ": confidence level must lie in (0, 1)");
    }
}

void require_count(uint64_t n, const char* who) {
    if (n < 1) {
        throw std::domain_error(std::string(who) + ": sample count must be at least 1");
    }
}

// L = log_uen - ln(eps/8) > 0 for eps in (0, 1).
double entropy_margin(double eps, const UenValue& uen) {
    return uen.log_uen - std::log(eps / 8.0);
}

bool beta1_in_interval(double beta1) {
    return beta1 > kBeta1Lower && beta1 < kBeta1Upper;
}

bool beta2_in_interval(double beta2) {
    return beta2 > kBeta2Lower && beta2 < kBeta2Upper;
}

bool gamma_exp_usable(double g) { return g > 0.0 && g < 2.0; }

// Adaptive Simpson with a depth cap; integrands here are bounded and
// piecewise smooth (cover-log step functions included).
double simpson(const std::function<double(double)>& /*f*/, double a, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(f, a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 24);
}

}  // namespace

BoundedRange::BoundedRange(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) {
        throw std::domain_error("BoundedRange: requires a < b");
    }
}

UenValue::UenValue(double log_uen_, UenSource source_) : log_uen(log_uen_), source(source_) {
    if (!(log_uen >= 0.0)) {
        throw std::domain_error("UenValue: log covering number must be >= 0");
    }
}

const char* to_string(BoundFamily family) {
    switch (family) {
        case BoundFamily::HoeffdingUEN: return "hoeffding_uen";
        case BoundFamily::BennettSum: return "bennett_sum";
        case BoundFamily::BennettBdiff: return "bennett_bdiff";
        case BoundFamily::BennettUEN: return "bennett_uen";
        case BoundFamily::BernsteinAltUEN: return "bernstein_alt_uen";
        case BoundFamily::BennettAltUEN: return "bennett_alt_uen";
        case BoundFamily::RademacherClassical: return "rademacher_classical";
        case BoundFamily::RademacherBennett: return "rademacher_bennett";
    }
    return "unknown";
}

BoundResult hoeffding_uen_tail(double xi, uint64_t n, const BoundedRange& range,
                               const UenValue& uen) {
    require_count(n, "hoeffding_uen_tail");
    if (!(xi > 0.0)) {
        throw std::domain_error("hoeffding_uen_tail: deviation must be positive");
    }
    const double w = range.width();
    const double raw =
        8.0 * std::exp(uen.log_uen - double(n) * xi * xi / (32.0 * w * w));
    const bool valid = double(n) >= 8.0 * w * w / (xi * xi);
    return {clip01(raw), raw, BoundFamily::HoeffdingUEN, valid};
}

BoundResult bennett_sum_tail(double xi, uint64_t n, const BoundedRange& range) {
    require_count(n, "bennett_sum_tail");
    const double w = range.width();
    if (!(xi > 0.0) || !(xi < double(n) * w)) {
        throw std::domain_error("bennett_sum_tail: requires 0 < xi < N(b-a)");
    }
    const double raw = 2.0 * std::exp(double(n) * gamma_fn(xi / (double(n) * w)));
    return {clip01(raw), raw, BoundFamily::BennettSum, true};
}

BoundResult bennett_bdiff_tail(double xi, uint64_t n, double c) {
    require_count(n, "bennett_bdiff_tail");
    if (!(c > 0.0)) {
        throw std::domain_error("bennett_bdiff_tail: difference constant must be positive");
    }
    if (!(xi > 0.0)) {
        throw std::domain_error("bennett_bdiff_tail: deviation must be positive");
    }
    const double raw = std::exp(double(n) * gamma_fn(xi / (double(n) * c)));
    return {clip01(raw), raw, BoundFamily::BennettBdiff, true};
}

BoundResult bennett_uen_tail(double xi, uint64_t n, const BoundedRange& range,
                             const UenValue& uen) {
    require_count(n, "bennett_uen_tail");
    if (!(xi > 0.0)) {
        throw std::domain_error("bennett_uen_tail: deviation must be positive");
    }
    const double w = range.width();
    const double raw =
        8.0 * std::exp(uen.log_uen + double(n) * gamma_fn(xi / (8.0 * w)));
    const bool valid = xi <= w && double(n) >= 8.0 * w * w / (xi * xi);
    return {clip01(raw), raw, BoundFamily::BennettUEN, valid};
}

double hoeffding_uen_radius(double eps, uint64_t n, const BoundedRange& range,
                            const UenValue& uen) {
    require_count(n, "hoeffding_uen_radius");
    require_confidence(eps, "hoeffding_uen_radius");
    const double L = entropy_margin(eps, uen);
    return range.width() * std::sqrt(32.0 * L / double(n));
}

double bernstein_uen_radius(double eps, uint64_t n, const BoundedRange& range,
                            const UenValue& uen) {
    require_count(n, "bernstein_uen_radius");
    require_confidence(eps, "bernstein_uen_radius");
    const double w = range.width();
    const double L = entropy_margin(eps, uen);
    return 4.0 * w * L / (3.0 * double(n)) + w * std::sqrt(2.0 * L / double(n));
}

BoundResult bennett_alt_radius(double eps, uint64_t n, const BoundedRange& range,
                               const UenValue& uen, double beta1, double gamma_exp) {
    require_count(n, "bennett_alt_radius");
    require_confidence(eps, "bennett_alt_radius");
    const double L = entropy_margin(eps, uen);
    const bool valid = gamma_exp_usable(gamma_exp) && beta1_in_interval(beta1);
    double raw = kNan;
    if (gamma_exp > 0.0 && beta1 > 0.0) {
        raw = 8.0 * range.width() * std::pow(L / (beta1 * double(n)), 1.0 / gamma_exp);
    }
    return {raw, raw, BoundFamily::BennettAltUEN, valid};
}

BoundResult bennett_uen_radius_exact(double eps, uint64_t n, const BoundedRange& range,
                                     const UenValue& uen) {
    require_count(n, "bennett_uen_radius_exact");
    if (!(eps > 0.0) || !(eps < 8.0 * std::exp(uen.log_uen))) {
        throw std::domain_error(
            "bennett_uen_radius_exact: requires 0 < eps < 8 e^{log_uen}");
    }
    const double w = range.width();
    const double target = (std::log(eps / 8.0) - uen.log_uen) / double(n);
    const double x = gamma_inverse(target);
    const double raw = 8.0 * w * x;
    // Normalized arguments beyond 1/8 ask for a deviation beyond b-a, where
    // the bound is void; saturate and flag.
    const bool valid = x <= 0.125 * (1.0 + 1e-12);
    return {valid ? raw : w, raw, BoundFamily::BennettUEN, valid};
}

double rademacher_bound_classical(double emp_risk, double rad, double emp_rad,
                                  uint64_t n, const BoundedRange& range, double eps,
                                  bool use_empirical) {
    require_count(n, "rademacher_bound_classical");
    require_confidence(eps, "rademacher_bound_classical");
    const double w = range.width();
    if (use_empirical) {
        return emp_risk + 2.0 * emp_rad +
               3.0 * w * std::sqrt(std::log(2.0 / eps) / (2.0 * double(n)));
    }
    return emp_risk + 2.0 * rad + w * std::sqrt(std::log(1.0 / eps) / double(n));
}

BoundResult rademacher_bound_bennett(double emp_risk, double rad, double emp_rad,
                                     uint64_t n, const BoundedRange& range, double eps,
                                     double beta2, double gamma_exp, bool use_empirical) {
    require_count(n, "rademacher_bound_bennett");
    require_confidence(eps, "rademacher_bound_bennett");
    const double w = range.width();
    const bool valid = gamma_exp_usable(gamma_exp) && beta2_in_interval(beta2);
    double value = kNan;
    if (gamma_exp > 0.0 && beta2 > 0.0) {
        if (use_empirical) {
            value = emp_risk + 2.0 * emp_rad +
                    3.0 * w * std::pow(std::log(2.0 / eps) / (beta2 * double(n)),
                                       1.0 / gamma_exp);
        } else {
            value = emp_risk + 2.0 * rad +
                    w * std::pow(std::log(1.0 / eps) / (beta2 * double(n)),
                                 1.0 / gamma_exp);
        }
    }
    return {value, value, BoundFamily::RademacherBennett, valid};
}

BoundResult rad_population_from_empirical(double emp_rad, uint64_t n,
                                           const BoundedRange& range, double eps,
                                           RadBoundFamily family, double beta2,
                                           double gamma_exp) {
    require_count(n, "rad_population_from_empirical");
    require_confidence(eps, "rad_population_from_empirical");
    const double w = range.width();
    if (family == RadBoundFamily::Hoeffding) {
        const double value =
            emp_rad + w * std::sqrt(std::log(2.0 / eps) / (2.0 * double(n)));
        return {value, value, BoundFamily::RademacherClassical, true};
    }
    const bool valid = gamma_exp_usable(gamma_exp) && beta2_in_interval(beta2);
    double value = kNan;
    if (gamma_exp > 0.0 && beta2 > 0.0) {
        value = emp_rad +
                w * std::pow(std::log(2.0 / eps) / (beta2 * double(n)), 1.0 / gamma_exp);
    }
    return {value, value, BoundFamily::RademacherBennett, valid};
}

double dudley_upper_bound(const std::function<double(double)>& covering_log_fn,
                          uint64_t n, std::span<const double> eps_grid, double xi_max) {
    if (eps_grid.empty()) {
        throw std::invalid_argument("dudley_upper_bound: eps grid must be nonempty");
    }
    if (!(xi_max > 0.0)) {
        throw std::invalid_argument("dudley_upper_bound: xi_max must be positive");
    }
    for (double e : eps_grid) {
        if (!(e > 0.0)) {
            throw std::invalid_argument("dudley_upper_bound: eps grid must be positive");
        }
    }

    // Spot-check monotonicity of the covering function.
    const int kProbe = 256;
    double prev = covering_log_fn(xi_max / double(kProbe));
    for (int i = 2; i <= kProbe; ++i) {
        const double t = xi_max * double(i) / double(kProbe);
        const double cur = covering_log_fn(t);
        if (cur > prev + 1e-9 * std::max(1.0, std::abs(prev))) {
            throw std::invalid_argument(
                "dudley_upper_bound: covering function must be nonincreasing");
        }
        prev = cur;
    }

    const auto integrand = [&](double t) {
        return std::sqrt(std::max(0.0, covering_log_fn(t)) / double(n));
    };

    double best = std::numeric_limits<double>::infinity();
    for (double eps : eps_grid) {
        const double tail = eps < xi_max ? integrate(integrand, eps, xi_max, 1e-10) : 0.0;
        best = std::min(best, 4.0 * eps + 12.0 * tail);
    }
    return best;
}

double sudakov_lower_shape(const std::function<double(double)>& covering_log_fn,
                           uint64_t n, std::span<const double> alpha_grid) {
    if (alpha_grid.empty()) {
        throw std::invalid_argument("sudakov_lower_shape: alpha grid must be nonempty");
    }
    if (n < 2) {
        throw std::domain_error("sudakov_lower_shape: needs N >= 2 (divides by ln N)");
    }
    double sup = 0.0;
    for (double alpha : alpha_grid) {
        if (!(alpha > 0.0)) {
            throw std::invalid_argument("sudakov_lower_shape: alpha grid must be positive");
        }
        sup = std::max(sup, alpha * std::sqrt(std::max(0.0, covering_log_fn(alpha)) /
                                              double(n)));
    }
    return sup / std::log(double(n));
}

}  // namespace benkit
