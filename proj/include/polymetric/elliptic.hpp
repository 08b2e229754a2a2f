#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace polymetric {

/// Complete elliptic integral pair for a modulus lambda in (0,1).
///
/// Conventions: lambda is the *modulus* (not the parameter m = lambda^2),
/// K(lambda) = int_0^1 dt / sqrt((1-t^2)(1-lambda^2 t^2)) and
/// K'(lambda) = K(sqrt(1-lambda^2)).  Both integrals are evaluated with the
/// arithmetic-geometric mean; K' uses AGM(1, lambda) directly so that tiny
/// moduli do not lose precision to the 1-lambda^2 rounding.
struct EllipticModulus {
    double lambda;      // modulus, in (0,1)
    double k_complete;  // K(lambda)
    double k_prime;     // K'(lambda)
};

/// Jacobi sn, cn, dn at a (possibly complex) argument.
struct JacobiTriple {
    std::complex<double> sn;
    std::complex<double> cn;
    std::complex<double> dn;
};

/// Thrown when a Jacobi evaluation lands inside the pole exclusion zone.
struct near_pole_error : std::domain_error {
    double pole_distance;
    explicit near_pole_error(double dist)
        : std::domain_error("jacobi_complex: argument within 1e-9 of a pole"),
          pole_distance(dist) {}
};

namespace detail {

inline double agm(double a, double b) {
    for (int i = 0; i < 32 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

// Jacobi sn, cn, dn for real argument.  Input is the *complementary
// parameter* mc = 1 - lambda^2; passing mc exactly avoids cancellation for
// moduli near 0 or 1 (the caller can often form it without ever rounding
// through 1 - lambda^2).  Gauss transformation with backward amplitude
// recurrence; see Bulirsch, Numer. Math. 7 (1965).
inline void sncndn(double u, double mc, double& sn, double& cn, double& dn) {
    constexpr double kTol = 1.0e-8;  // result error is O(kTol^2)
    constexpr int kDepth = 32;
    if (mc == 0.0) {  // modulus 1: hyperbolic limit
        cn = 1.0 / std::cosh(u);
        dn = cn;
        sn = std::tanh(u);
        return;
    }
    double em[kDepth], en[kDepth];
    double a = 1.0, c = 1.0;
    dn = 1.0;
    int l = 0;
    for (int i = 0; i < kDepth; ++i) {
        l = i;
        em[i] = a;
        mc = std::sqrt(mc);
        en[i] = mc;
        c = 0.5 * (a + mc);
        if (std::abs(a - mc) <= kTol * a) break;
        mc *= a;
        a = c;
    }
    u *= c;
    sn = std::sin(u);
    cn = std::cos(u);
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int i = l; i >= 0; --i) {
            const double b = em[i];
            a *= c;
            c *= dn;
            dn = (en[i] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = (sn >= 0.0 ? a : -a);
        cn = c * sn;
    }
}

}  // namespace detail

/// K(lambda) and K'(lambda) by AGM, machine fixed point.
inline EllipticModulus elliptic_k(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::domain_error("elliptic_k: modulus must lie in (0,1)");
    const double lp = std::sqrt((1.0 - lambda) * (1.0 + lambda));
    const double half_pi = 0.5 * std::numbers::pi;
    return EllipticModulus{lambda, half_pi / detail::agm(1.0, lp),
                           half_pi / detail::agm(1.0, lambda)};
}

/// sn, cn, dn of a real argument; period 4K handled by argument reduction.
inline JacobiTriple jacobi_real(double u, const EllipticModulus& m) {
    if (!std::isfinite(u)) throw std::domain_error("jacobi_real: non-finite argument");
    const double period = 4.0 * m.k_complete;
    if (std::abs(u) > 0.5 * period) u -= period * std::round(u / period);
    double sn, cn, dn;
    const double mc = (1.0 - m.lambda) * (1.0 + m.lambda);
    detail::sncndn(u, mc, sn, cn, dn);
    return JacobiTriple{sn, cn, dn};
}

/// Distance from z to the nearest pole of sn(.,lambda), the lattice
/// 2aK + (2b+1) iK'.
inline double jacobi_pole_distance(std::complex<double> z, const EllipticModulus& m) {
    const double two_k = 2.0 * m.k_complete;
    const double two_kp = 2.0 * m.k_prime;
    const double dx = z.real() - two_k * std::round(z.real() / two_k);
    double ry = z.imag() - two_kp * std::round(z.imag() / two_kp);
    const double dy = std::min(std::abs(ry - m.k_prime), std::abs(ry + m.k_prime));
    return std::hypot(dx, dy);
}

/// sn, cn, dn of a complex argument via the real/imaginary addition
/// decomposition: the imaginary part is handled with the complementary
/// modulus, whose complementary parameter is exactly lambda^2.
inline JacobiTriple jacobi_complex(std::complex<double> z, const EllipticModulus& m) {
    const double dist = jacobi_pole_distance(z, m);
    if (dist < 1e-9) throw near_pole_error(dist);

    const double lam2 = m.lambda * m.lambda;
    const double period = 4.0 * m.k_complete;
    const double period_p = 4.0 * m.k_prime;
    double x = z.real(), y = z.imag();
    if (std::abs(x) > 0.5 * period) x -= period * std::round(x / period);
    if (std::abs(y) > 0.5 * period_p) y -= period_p * std::round(y / period_p);

    double s, c, d;
    detail::sncndn(x, (1.0 - m.lambda) * (1.0 + m.lambda), s, c, d);
    double s1, c1, d1;
    detail::sncndn(y, lam2, s1, c1, d1);

    const double denom = c1 * c1 + lam2 * s * s * s1 * s1;
    using C = std::complex<double>;
    return JacobiTriple{
        C(s * d1, c * d * s1 * c1) / denom,
        C(c * c1, -s * d * s1 * d1) / denom,
        C(d * c1 * d1, -lam2 * s * c * s1) / denom,
    };
}

/// Modulus from a target K/K' ratio through the nome:
/// q = exp(-pi K'/K), lambda = (theta2(q)/theta3(q))^2.
/// Serves as an oracle independent of the AGM-based bisection route.
inline double nome_lambda(double ratio) {
    if (!(ratio > 0.0)) throw std::domain_error("nome_lambda: ratio must be positive");
    const double q = std::exp(-std::numbers::pi / ratio);
    double theta2 = 0.0;
    for (int n = 0;; ++n) {
        const double term = std::pow(q, n * (n + 1));
        theta2 += term;
        if (term < 1e-16) break;
    }
    theta2 *= 2.0 * std::pow(q, 0.25);
    double theta3 = 1.0;
    for (int n = 1;; ++n) {
        const double term = 2.0 * std::pow(q, double(n) * n);
        theta3 += term;
        if (term < 1e-16) break;
    }
    const double r = theta2 / theta3;
    return r * r;
}

/// Solve K(lambda)/K'(lambda) = ratio by bisection in log(lambda).
/// Strictly monotone; if the target is below what double precision can
/// represent (ratio below about 2.2e-3) the smallest usable modulus is
/// returned, which already reproduces the limit values to machine accuracy.
inline EllipticModulus modulus_from_ratio(double ratio) {
    if (!(ratio > 0.0)) throw std::domain_error("modulus_from_ratio: ratio must be positive");
    auto f = [](double lambda) {
        const EllipticModulus m = elliptic_k(lambda);
        return m.k_complete / m.k_prime;
    };
    double lo = std::log(1e-312), hi = std::log1p(-1e-16);
    if (f(std::exp(lo)) >= ratio) return elliptic_k(std::exp(lo));
    if (f(std::exp(hi)) <= ratio) return elliptic_k(std::exp(hi));
    for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(std::exp(mid)) < ratio ? lo : hi) = mid;
    }
    return elliptic_k(std::exp(0.5 * (lo + hi)));
}

}  // namespace polymetric
