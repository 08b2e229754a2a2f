#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polymetric {

struct GammaSuite {
    double gamma;
    double log_gamma;
    double digamma;
};

namespace detail {

// log Gamma for x > 0: recurrence up to x >= 10, then a Stirling series
// with Bernoulli coefficients through B16.  Truncation below 2e-18 at x=10.
inline double log_gamma_pos(double x) {
    double shift = 0.0;
    while (x < 10.0) {
        shift -= std::log(x);
        x += 1.0;
    }
    constexpr double c[8] = {
        1.0 / 12.0,   -1.0 / 360.0,     1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
    };
    const double x2 = 1.0 / (x * x);
    double series = c[7];
    for (int i = 6; i >= 0; --i) series = series * x2 + c[i];
    series /= x;
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return shift + (x - 0.5) * std::log(x) - x + half_log_2pi + series;
}

inline double digamma_pos(double x) {
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    constexpr double c[7] = {
        1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
        1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
    };
    const double x2 = 1.0 / (x * x);
    double series = c[6];
    for (int i = 5; i >= 0; --i) series = series * x2 + c[i];
    return shift + std::log(x) - 0.5 / x - series * x2;
}

}  // namespace detail

/// Gamma, log Gamma and digamma on the positive axis.
inline GammaSuite gamma_suite(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_suite: argument must be positive");
    const double lg = detail::log_gamma_pos(x);
    return GammaSuite{std::exp(lg), lg, detail::digamma_pos(x)};
}

inline double gamma_fn(double x) { return gamma_suite(x).gamma; }
inline double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
    return detail::digamma_pos(x);
}

/// Euler beta, B(a,b) = Gamma(a) Gamma(b) / Gamma(a+b).
inline double beta(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw std::domain_error("beta: arguments must be positive");
    return std::exp(detail::log_gamma_pos(a) + detail::log_gamma_pos(b) -
                    detail::log_gamma_pos(a + b));
}

}  // namespace polymetric
