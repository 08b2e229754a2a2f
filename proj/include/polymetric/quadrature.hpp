#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace polymetric {

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth, int max_depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance.
template <class F>
double adaptive_simpson(F f, double a, double b, double abs_tol = 1e-13, int max_depth = 40) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol, 0, max_depth);
}

/// int_0^x (1+t^2)^(alpha-1) dt, the triangle-map edge integral.
/// Strictly increasing in x; alpha in (0,1).
inline double sc_edge_integral(double alpha, double x) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("sc_edge_integral: exponent must lie in (0,1)");
    if (!(x >= 0.0)) throw std::domain_error("sc_edge_integral: x must be nonnegative");
    if (x == 0.0) return 0.0;
    auto f = [alpha](double t) { return std::pow(1.0 + t * t, alpha - 1.0); };
    // split long ranges so the local Simpson scale matches the decay of f
    double total = 0.0, lo = 0.0;
    while (lo < x) {
        const double hi = std::min(x, lo == 0.0 ? 2.0 : 2.0 * lo);
        total += adaptive_simpson(f, lo, hi, 1e-13, 40);
        lo = hi;
    }
    return total;
}

}  // namespace polymetric
