#include "benkit/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace benkit {
namespace {

constexpr double kSeriesCutoff = 1e-4;

// G(x) = sum_{n>=2} (-1)^{n+1} x^n / (n(n-1)) = -x^2/2 + x^3/6 - x^4/12 + ...
// Direct evaluation of x - (1+x)ln(1+x) subtracts two ~x quantities to get a
// ~x^2/2 result, so small arguments go through the series instead.
double gamma_series(double x) {
    double term = -0.5 * x * x;  // n = 2
    double sum = term;
    for (int n = 3; n < 64; ++n) {
        term *= -x * double(n - 2) / double(n);
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > -1.0)) {
        throw std::domain_error("gamma_fn: invalid normalized deviation, requires x > -1");
    }
    if (std::abs(x) < kSeriesCutoff) return gamma_series(x);
    return x - (1.0 + x) * std::log1p(x);
}

double gamma_fn_derivative(double x) {
    if (!(x > -1.0)) {
        throw std::domain_error("gamma_fn_derivative: requires x > -1");
    }
    return -std::log1p(x);
}

double gamma_inverse(double y) {
    if (!(y <= 0.0)) {
        throw std::domain_error("gamma_inverse: target must be <= 0");
    }
    if (y == 0.0) return 0.0;

    // gamma_fn(x) >= -x^2/2 for x >= 0, so sqrt(-2y) starts at or below the
    // root; double until the bracket closes.
    double lo = 0.0;
    double hi = std::sqrt(-2.0 * y);
    if (!(hi > 0.0) || !std::isfinite(hi)) hi = 1.0;
    while (gamma_fn(hi) > y) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw std::domain_error("gamma_inverse: bracket overflow");
        }
    }

    for (int i = 0; i < 200 && (hi - lo) > 1e-13 * std::max(1.0, lo); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_fn(mid) > y) lo = mid; else hi = mid;
    }

    // Newton polish: x <- x + (G(x) - y)/ln(1+x), since G'(x) = -ln(1+x).
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double d = std::log1p(x);
        if (d == 0.0) break;
        const double next = x + (gamma_fn(x) - y) / d;
        if (!(next > 0.0) || next == x) break;
        x = next;
    }
    return x;
}

double gamma_exponent(double beta, double x) {
    if (!(beta > 0.0)) {
        throw std::domain_error("gamma_exponent: beta must be positive");
    }
    if (!(x > 0.0) || !(x < 1.0)) {
        throw std::domain_error("gamma_exponent: out-of-domain exponent query, requires 0 < x < 1");
    }
    return std::log(-gamma_fn(x) / beta) / std::log(x);
}

ExponentValue gamma_exponent_checked(double beta, double x) {
    const double value = gamma_exponent(beta, x);
    return {value, std::abs(std::log(x)) >= 1e-9};
}

double gamma_exponent_derivative(double beta, double x) {
    if (!(beta > 0.0)) {
        throw std::domain_error("gamma_exponent_derivative: beta must be positive");
    }
    if (!(x > 0.0) || !(x < 1.0)) {
        throw std::domain_error("gamma_exponent_derivative: requires 0 < x < 1");
    }
    // g = ln(u/beta)/ln x with u = -gamma_fn, u' = ln(1+x):
    //   g' = (u'/u * ln x - ln(u/beta)/x) / (ln x)^2.
    const double u = -gamma_fn(x);
    const double up = std::log1p(x);
    const double lx = std::log(x);
    return (up / u * lx - std::log(u / beta) / x) / (lx * lx);
}

double bernstein_approx(double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("bernstein_approx: x must be nonnegative");
    }
    return -x * x / (2.0 + 2.0 * x / 3.0);
}

}  // namespace benkit
