#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace polymetric {

/// Bisection for a continuous function with f(lo) and f(hi) of opposite sign.
/// Runs to the floating-point fixed point of the bracket.
template <class F>
double bisect_root(F f, double lo, double hi) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Expand [1, hi] upward until f(hi) >= target (f increasing, unbounded).
template <class F>
double expand_upper_bracket(F f, double target, double hi = 1.0) {
    for (int i = 0; i < 80 && f(hi) < target; ++i) hi *= 2.0;
    return hi;
}

struct MaxResult {
    double arg;
    double value;
};

/// Golden-section maximization of a unimodal function on [lo, hi].
template <class F>
MaxResult golden_max(F f, double lo, double hi, double arg_tol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > arg_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    return MaxResult{xm, f(xm)};
}

/// Golden-section minimization (negated maximization).
template <class F>
MaxResult golden_min(F f, double lo, double hi, double arg_tol = 1e-10) {
    auto neg = [&f](double x) { return -f(x); };
    MaxResult r = golden_max(neg, lo, hi, arg_tol);
    return MaxResult{r.arg, -r.value};
}

}  // namespace polymetric
