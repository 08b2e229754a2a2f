#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "polymetric/elliptic.hpp"
#include "polymetric/gammafun.hpp"
#include "polymetric/quadrature.hpp"
#include "polymetric/rootfind.hpp"

using namespace polymetric;

namespace {

// Independent oracle for the Jacobi amplitude: integrate
// phi' = sqrt(1 - lambda^2 sin^2 phi), phi(0) = 0, with classical RK4.
double amplitude_ode(double u, double lambda, int steps = 20000) {
    auto f = [lambda](double phi) {
        const double s = std::sin(phi);
        return std::sqrt(1.0 - lambda * lambda * s * s);
    };
    const double h = u / steps;
    double phi = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(phi);
        const double k2 = f(phi + 0.5 * h * k1);
        const double k3 = f(phi + 0.5 * h * k2);
        const double k4 = f(phi + h * k3);
        phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return phi;
}

// 2F1(1/2, 1-a; 3/2; -x^2) via the Euler transformation, so the series
// argument x^2/(1+x^2) stays in [0,1).
double gauss_2f1_edge(double alpha, double x) {
    const double w = x * x / (1.0 + x * x);
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 4000; ++n) {
        term *= (0.5 + n) * (0.5 + alpha + n) / ((1.5 + n) * (n + 1.0)) * w;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(1.0 + x * x);
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_CASE("complete elliptic integrals") {
    SECTION("small-modulus limit is pi/2") {
        const auto m = elliptic_k(1e-12);
        CHECK(std::abs(m.k_complete - std::numbers::pi / 2.0) < 1e-14);
    }
    SECTION("lemniscatic point: K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt pi)") {
        const auto m = elliptic_k(1.0 / std::sqrt(2.0));
        const double g = gamma_fn(0.25);
        const double expected = g * g / (4.0 * std::sqrt(std::numbers::pi));
        CHECK(std::abs(m.k_complete - expected) < 1e-13 * expected);
        CHECK(std::abs(m.k_complete - m.k_prime) < 1e-12);
    }
    SECTION("singular value: K'/K = 2 at lambda = 3 - 2 sqrt 2") {
        const auto m = elliptic_k(3.0 - 2.0 * std::sqrt(2.0));
        CHECK(std::abs(m.k_prime / m.k_complete - 2.0) < 1e-12);
    }
    SECTION("complementary-modulus consistency") {
        for (double lam : {0.05, 0.3, 0.5, 0.77, 0.95}) {
            const auto m = elliptic_k(lam);
            const auto mc = elliptic_k(std::sqrt((1.0 - lam) * (1.0 + lam)));
            CHECK(std::abs(m.k_prime - mc.k_complete) < 1e-13 * m.k_prime);
        }
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(elliptic_k(0.0), std::domain_error);
        CHECK_THROWS_AS(elliptic_k(1.0), std::domain_error);
        CHECK_THROWS_AS(elliptic_k(-0.5), std::domain_error);
    }
}

TEST_CASE("jacobi elliptic functions, real argument") {
    SECTION("origin and quarter period") {
        const auto m = elliptic_k(0.7);
        const auto j0 = jacobi_real(0.0, m);
        CHECK(std::abs(j0.sn) < 1e-15);
        CHECK(std::abs(j0.cn - 1.0) < 1e-15);
        CHECK(std::abs(j0.dn - 1.0) < 1e-15);
        const auto jk = jacobi_real(m.k_complete, m);
        CHECK(std::abs(jk.sn - 1.0) < 1e-12);
        CHECK(std::abs(jk.cn) < 1e-12);
        const double lp = std::sqrt(1.0 - 0.7 * 0.7);
        CHECK(std::abs(jk.dn - lp) < 1e-12);
    }
    SECTION("amplitude ODE oracle at u=1, lambda=0.5") {
        const auto m = elliptic_k(0.5);
        const auto j = jacobi_real(1.0, m);
        const double phi = amplitude_ode(1.0, 0.5);
        CHECK(std::abs(j.sn.real() - std::sin(phi)) < 1e-10);
        CHECK(std::abs(j.cn.real() - std::cos(phi)) < 1e-10);
        const double dn = std::sqrt(1.0 - 0.25 * std::sin(phi) * std::sin(phi));
        CHECK(std::abs(j.dn.real() - dn) < 1e-10);
    }
    SECTION("periodicity sn(u + 4K) = sn(u)") {
        const auto m = elliptic_k(0.83);
        for (double u : {0.3, 1.1, 2.9}) {
            const auto a = jacobi_real(u, m);
            const auto b = jacobi_real(u + 4.0 * m.k_complete, m);
            CHECK(std::abs(a.sn - b.sn) < 1e-12);
            CHECK(std::abs(a.cn - b.cn) < 1e-12);
        }
    }
    SECTION("sn^2 + cn^2 = 1 and dn^2 + lambda^2 sn^2 = 1 on random samples") {
        std::mt19937_64 rng(12345);
        for (int i = 0; i < 100; ++i) {
            const double lam = 0.001 + 0.998 * uniform01(rng);
            const auto m = elliptic_k(lam);
            for (int j = 0; j < 100; ++j) {
                const double u = 8.0 * (uniform01(rng) - 0.5);
                const auto t = jacobi_real(u, m);
                CHECK(std::abs(t.sn * t.sn + t.cn * t.cn - 1.0) < 1e-12);
                CHECK(std::abs(t.dn * t.dn + lam * lam * t.sn * t.sn - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("jacobi elliptic functions, complex argument") {
    const auto m = elliptic_k(0.43);
    SECTION("real axis agrees with the real path") {
        for (double u : {0.2, 0.9, 1.7}) {
            const auto a = jacobi_real(u, m);
            const auto b = jacobi_complex(std::complex<double>(u, 0.0), m);
            CHECK(std::abs(a.sn - b.sn) < 1e-13);
            CHECK(std::abs(a.cn - b.cn) < 1e-13);
            CHECK(std::abs(a.dn - b.dn) < 1e-13);
        }
    }
    SECTION("purely imaginary segment gives purely imaginary sn") {
        for (int i = 1; i < 20; ++i) {
            const double t = m.k_prime * i / 20.0 * 0.999;
            const auto j = jacobi_complex(std::complex<double>(0.0, t), m);
            CHECK(std::abs(j.sn.real()) <= 1e-12);
        }
    }
    SECTION("half imaginary period identities") {
        const double lam = 0.43;
        const auto j = jacobi_complex(std::complex<double>(0.0, 0.5 * m.k_prime), m);
        CHECK(std::abs(j.sn - std::complex<double>(0.0, 1.0 / std::sqrt(lam))) < 1e-10);
        CHECK(std::abs(j.cn - std::sqrt((1.0 + lam) / lam)) < 1e-10);
        CHECK(std::abs(j.dn - std::sqrt(1.0 + lam)) < 1e-10);
    }
    SECTION("complex identities away from poles") {
        std::mt19937_64 rng(777);
        for (int i = 0; i < 200; ++i) {
            const std::complex<double> z(4.0 * (uniform01(rng) - 0.5),
                                         4.0 * (uniform01(rng) - 0.5));
            if (jacobi_pole_distance(z, m) < 1e-3) continue;
            const auto j = jacobi_complex(z, m);
            CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-11);
            CHECK(std::abs(j.dn * j.dn + 0.43 * 0.43 * j.sn * j.sn - 1.0) < 1e-11);
        }
    }
    SECTION("near-pole rejection carries the distance") {
        const std::complex<double> pole(0.0, m.k_prime);
        try {
            jacobi_complex(pole + std::complex<double>(1e-10, 0.0), m);
            FAIL("expected near_pole_error");
        } catch (const near_pole_error& e) {
            CHECK(e.pole_distance < 1e-9);
        }
    }
}

TEST_CASE("gamma suite") {
    SECTION("half-integer and reflection anchors") {
        CHECK(std::abs(gamma_fn(0.5) - std::sqrt(std::numbers::pi)) <
              1e-13 * std::sqrt(std::numbers::pi));
        const double refl = gamma_fn(0.25) * gamma_fn(0.75);
        CHECK(std::abs(refl - std::numbers::pi * std::sqrt(2.0)) < 1e-12 * refl);
        CHECK(std::abs(gamma_fn(1.0) - 1.0) < 1e-14);
        CHECK(std::abs(gamma_fn(6.0) - 120.0) < 1e-12 * 120.0);
    }
    SECTION("agrees with the C library across the positive axis") {
        for (double x : {0.05, 0.31, 0.5, 1.0, 2.7, 4.2, 9.9, 15.5, 30.0}) {
            CHECK(std::abs(gamma_suite(x).gamma - std::tgamma(x)) <
                  2e-13 * std::tgamma(x));
            CHECK(std::abs(gamma_suite(x).log_gamma - std::lgamma(x)) < 2e-13 * (1.0 + std::abs(std::lgamma(x))));
        }
    }
    SECTION("digamma strictly increasing on (0,10]") {
        double prev = digamma(0.01);
        for (int i = 1; i <= 200; ++i) {
            const double x = 0.01 + (10.0 - 0.01) * i / 200.0;
            const double cur = digamma(x);
            CHECK(cur > prev);
            prev = cur;
        }
    }
    SECTION("digamma closed-form anchors") {
        const double euler = 0.57721566490153286;
        CHECK(std::abs(digamma(1.0) + euler) < 1e-12);
        CHECK(std::abs(digamma(0.5) + euler + 2.0 * std::log(2.0)) < 1e-12);
        CHECK(std::abs(digamma(2.0) - (1.0 - euler)) < 1e-12);
    }
    SECTION("digamma matches a central difference of log gamma") {
        for (double x : {0.3, 1.1, 2.5, 7.7}) {
            const double h = 1e-6;
            const double fd =
                (gamma_suite(x + h).log_gamma - gamma_suite(x - h).log_gamma) / (2.0 * h);
            CHECK(std::abs(digamma(x) - fd) < 1e-7);
        }
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(gamma_suite(0.0), std::domain_error);
        CHECK_THROWS_AS(gamma_suite(-1.5), std::domain_error);
    }
}

TEST_CASE("beta function") {
    CHECK(std::abs(beta(1.0, 1.0) - 1.0) < 1e-14);
    CHECK(std::abs(beta(0.5, 0.5) - std::numbers::pi) < 1e-12);
    SECTION("square-constant identity: (1/4) sqrt2 B(1/4,1/2) = Gamma(1/4)^2/(4 sqrt pi)") {
        const double lhs = 0.25 * std::sqrt(2.0) * beta(0.25, 0.5);
        const double g = gamma_fn(0.25);
        const double rhs = g * g / (4.0 * std::sqrt(std::numbers::pi));
        CHECK(std::abs(lhs - rhs) < 1e-11);
    }
    CHECK_THROWS_AS(beta(0.0, 1.0), std::domain_error);
}

TEST_CASE("edge integral of the triangle maps") {
    SECTION("zero at zero") {
        CHECK(sc_edge_integral(0.3, 0.0) == 0.0);
    }
    SECTION("alpha = 1/2 elementary antiderivative") {
        for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
            const double expected = std::log(x + std::sqrt(1.0 + x * x));
            CHECK(std::abs(sc_edge_integral(0.5, x) - expected) < 1e-12);
        }
    }
    SECTION("hypergeometric cross-check x 2F1(1/2, 1-a; 3/2; -x^2)") {
        for (double alpha : {0.15, 0.33, 0.6, 0.85}) {
            for (double x : {0.4, 1.0, 2.5}) {
                const double expected = x * gauss_2f1_edge(alpha, x);
                CHECK(std::abs(sc_edge_integral(alpha, x) - expected) < 1e-10);
            }
        }
    }
    SECTION("strictly increasing in x") {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 100; ++i) {
            const double alpha = 0.01 + 0.98 * uniform01(rng);
            double x1 = 8.0 * uniform01(rng), x2 = 8.0 * uniform01(rng);
            if (x1 == x2) continue;
            if (x1 > x2) std::swap(x1, x2);
            CHECK(sc_edge_integral(alpha, x1) < sc_edge_integral(alpha, x2));
        }
    }
    CHECK_THROWS_AS(sc_edge_integral(1.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(sc_edge_integral(0.5, -1.0), std::domain_error);
}

TEST_CASE("modulus from the nome series") {
    SECTION("symmetry point: ratio 1 gives 1/sqrt 2") {
        CHECK(std::abs(nome_lambda(1.0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
    SECTION("ratio 1/2 gives the square modulus 3 - 2 sqrt 2 = 0.171572875...") {
        CHECK(std::abs(nome_lambda(0.5) - (3.0 - 2.0 * std::sqrt(2.0))) < 1e-12);
    }
    SECTION("agrees with AGM bisection for five ratios") {
        for (double ratio : {0.125, 0.25, 0.5, 1.0, 2.0}) {
            const auto m = modulus_from_ratio(ratio);
            CHECK(std::abs(m.k_complete / m.k_prime - ratio) < 1e-13 * (1.0 + ratio));
            CHECK(std::abs(nome_lambda(ratio) - m.lambda) < 1e-12);
        }
    }
    SECTION("ratio 1/4 is about 7.47e-3") {
        CHECK(std::abs(nome_lambda(0.25) - 7.47e-3) < 1e-4);
    }
}
