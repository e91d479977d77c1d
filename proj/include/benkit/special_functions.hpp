#pragma once

namespace benkit {

// The exponent function of Bennett's inequality:
//
//     G(x) = x - (1 + x) ln(1 + x),   x > -1.
//
// G(0) = 0, G is strictly decreasing and nonpositive on x >= 0, and
// G(x) ~ -x^2/2 near 0. A compensated series is used for small |x| where
// the direct expression cancels catastrophically.
double gamma_fn(double x);

// d/dx gamma_fn(x) = -ln(1 + x).
double gamma_fn_derivative(double x);

// Unique x >= 0 with gamma_fn(x) == y, for y <= 0. Bracketing by doubling,
// bisection, then Newton polish; residual |gamma_fn(result) - y| is at
// machine precision relative to |y|.
double gamma_inverse(double y);

// Exponent g solving gamma_fn(x) = -beta * x^g for 0 < x < 1, beta > 0:
//
//     g(beta; x) = ln(((x+1)ln(x+1) - x) / beta) / ln(x).
//
// Values below 2 encode a deviation bound decaying faster than N^{-1/2}
// once inverted. Throws std::domain_error at the x = 1 pole and outside
// the domain.
double gamma_exponent(double beta, double x);

struct ExponentValue {
    double value;
    bool reliable;  // false when |ln x| < 1e-9 (too close to the x = 1 pole)
};

// Same as gamma_exponent but reports proximity to the pole instead of
// being silent about it.
ExponentValue gamma_exponent_checked(double beta, double x);

// Analytic d/dx of gamma_exponent(beta, .) via the quotient rule.
double gamma_exponent_derivative(double beta, double x);

// Rational approximation -x^2 / (2 + 2x/3). Satisfies
// gamma_fn(x) <= bernstein_approx(x) <= 0 for all x >= 0; substituting it
// for gamma_fn yields closed-form (Bernstein-style) radii.
double bernstein_approx(double x);

// Reported parameter intervals for the exponent-equation coefficient, at
// 4-decimal rounding. The constants module re-derives them in full
// precision from the defining equations.
inline constexpr double kBeta1Lower = 0.0075;   // cap x <= 1/8
inline constexpr double kBeta1Upper = 0.4804;
inline constexpr double kBeta2Lower = 0.0075;   // cap x <= 1
inline constexpr double kBeta2Upper = 0.3863;

}  // namespace benkit
