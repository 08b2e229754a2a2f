#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "polymetric/elliptic.hpp"
#include "polymetric/geometry.hpp"

namespace polymetric {

/// Disk automorphism T_a(z) = (z - a) / (1 - conj(a) z).
inline Point mobius_disk(Point a, Point z) {
    if (!(std::abs(a) < 1.0)) throw std::domain_error("mobius_disk: |a| must be < 1");
    if (std::abs(z) > 1.0 + 1e-12) throw std::domain_error("mobius_disk: |z| must be <= 1");
    return (z - a) / (1.0 - std::conj(a) * z);
}

/// th(rho/2) in the upper half-plane: |x-y| / |x - conj(y)|.
inline double th_rho_halfplane(Point x, Point y) {
    if (!(x.imag() > 0.0 && y.imag() > 0.0))
        throw std::domain_error("th_rho_halfplane: points must have positive imaginary part");
    if (x == y) return 0.0;
    return std::abs(x - y) / std::abs(x - std::conj(y));
}

/// th(rho/2) in the unit disk: |x-y| / |1 - x conj(y)|.
inline double th_rho_disk(Point x, Point y) {
    if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0))
        throw std::domain_error("th_rho_disk: points must lie in the unit disk");
    if (x == y) return 0.0;
    return std::abs(x - y) / std::abs(1.0 - x * std::conj(y));
}

/// Modulus of the rectangle [-k,k]x[-1,1]: the root of K(l)/K'(l) = 1/(2k),
/// which is what the Jacobi sn map of the rotated rectangle
/// [-K,K]x[0,K'] onto the upper half-plane requires (K' = 2kK).
inline EllipticModulus rect_modulus(double k) {
    if (!(k >= 1.0)) throw std::domain_error("rect_modulus: requires k >= 1 (normalize first)");
    return modulus_from_ratio(0.5 / k);
}

/// Precomputed conformal map data for one rectangle aspect.
struct RectMap {
    double k;                 // half-width, >= 1
    EllipticModulus modulus;  // root of K/K' = 1/(2k)
    double alpha;             // K(lambda); z |-> i alpha (k - z) sends R onto [-K,K]x[0,K']
};

inline RectMap make_rect_map(double k) {
    if (!(k > 0.0)) throw std::domain_error("make_rect_map: k must be positive");
    if (k < 1.0) k = 1.0 / k;  // quarter-turn normalization z |-> (i/k) z
    const EllipticModulus m = rect_modulus(k);
    return RectMap{k, m, m.k_complete};
}

struct MappedPoint {
    Point w;   // image in the upper half-plane
    Point dw;  // derivative of the composed map
};

/// Conformal map of the rectangle onto the upper half-plane:
/// w = sn(i alpha (k - z), lambda), chain rule dw = -i alpha cn dn.
inline MappedPoint rect_to_halfplane(const RectMap& m, Point z) {
    const Rectangle R(m.k);
    const auto v = R.vertices();
    detail::require_interior(v.data(), v.size(), z, "rect_to_halfplane");
    const Point zeta = Point(0.0, m.alpha) * (m.k - z);
    const JacobiTriple j = jacobi_complex(zeta, m.modulus);
    return MappedPoint{j.sn, j.cn * j.dn * Point(0.0, -m.alpha)};
}

namespace detail {

// Map a point of [-k,k]x[-1,1] with k < 1 through the quarter turn
// z |-> (i/k) z onto the normalized rectangle with half-width 1/k.
inline Point quarter_turn_if_needed(double k, Point z) {
    return k < 1.0 ? Point(0.0, 1.0 / k) * z : z;
}

}  // namespace detail

/// th(rho/2) in the rectangle via conformal invariance.
inline double th_rho_rect(const RectMap& m, Point u, Point v) {
    if (u == v) return 0.0;
    const Point fu = rect_to_halfplane(m, u).w;
    const Point fv = rect_to_halfplane(m, v).w;
    return std::abs(fu - fv) / std::abs(fu - std::conj(fv));
}

inline double th_rho_rect(const Rectangle& R, Point u, Point v) {
    const RectMap m = make_rect_map(R.k);
    return th_rho_rect(m, detail::quarter_turn_if_needed(R.k, u),
                       detail::quarter_turn_if_needed(R.k, v));
}

/// Finite-difference estimate of lim_{u->v} th(rho/2)/s, averaged over the
/// four axis directions.  The limit equals 2 d(v) / r(v).
inline double local_ratio(const RectMap& m, Point v, double h) {
    const Rectangle R(m.k);
    const BoundaryContact bc = boundary_distance(R, v);
    if (!(h > 0.0 && h <= 1e-3 * bc.distance))
        throw std::domain_error("local_ratio: step must satisfy 0 < h <= 1e-3 d(v)");
    const Point steps[4] = {Point(h, 0), Point(-h, 0), Point(0, h), Point(0, -h)};
    double sum = 0.0;
    for (const Point& dp : steps) {
        const Point u = v + dp;
        sum += th_rho_rect(m, u, v) / s_metric(R, u, v).s;
    }
    return 0.25 * sum;
}

inline double local_ratio(const Rectangle& R, Point v, double h) {
    const RectMap m = make_rect_map(R.k);
    return local_ratio(m, detail::quarter_turn_if_needed(R.k, v), h);
}

}  // namespace polymetric
