#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vstate/contour.hpp"
#include "vstate/fourier_boundary.hpp"

using namespace vstate;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

FourierBoundary mode(int k, double amp, int n) {
    std::vector<double> a(n, 0.0), b(n, 0.0);
    a[k - 1] = amp;
    return FourierBoundary(1.0, a, b);
}

// Fourier-analytic oracle for the linearized F1 part at the disk:
// dF1[cos k.](x) = (1/4pi) (S_k + G_k sin kx) with S_k = pi sin(x) [k=1] and
// G_k = int sin(u) sin(ku) ln(4 sin^2(u/2)) du = -2pi/(k^2-1) for k >= 2.
double f1_directional_cos(int k, double x) {
    if (k == 1) return (kPi * std::sin(x) + kPi / 2.0 * std::sin(x)) / (4.0 * kPi);
    return (-kTwoPi / (k * k - 1.0)) * std::sin(k * x) / (4.0 * kPi);
}
}  // namespace

TEST_CASE("log kernel weights integrate the Fourier modes exactly") {
    const int m = 64;
    const auto& w = log_kernel_weights(m);
    for (int mode_idx : {0, 1, 2, 5, 17}) {
        double cs = 0.0, sn = 0.0;
        for (int j = 0; j < m; ++j) {
            const double u = kTwoPi * j / m;
            cs += w[j] * std::cos(mode_idx * u);
            sn += w[j] * std::sin(mode_idx * u);
        }
        const double expect = mode_idx == 0 ? 0.0 : -kTwoPi / mode_idx;
        CHECK(std::abs((cs) - (expect)) < (1e-12));
        CHECK(std::abs((sn) - (0.0)) < (1e-12));
    }
}

TEST_CASE("disk is a solution for every omega") {
    for (double om : {0.0, 0.1, 0.25, 0.4, 0.49}) {
        const ResidualField r = eval_contour_residual({FourierBoundary::disk(1.0, 16), om});
        CHECK(r.sup_norm < 1e-12);
    }
    CHECK(std::abs(eval_F1(FourierBoundary::disk(1.0, 8), 0.7)) < 1e-12);
}

TEST_CASE("F2 and F3 vanish at V = 0 and on symmetry axes") {
    const FourierBoundary disk = FourierBoundary::disk(1.0, 8);
    CHECK(eval_F2(disk, 0.3) == 0.0);
    CHECK(eval_F3(disk, 0.3) == 0.0);

    // even-cosine V has V'(0) = 0, so the F3 prefactor kills x = 0
    const FourierBoundary even = mode(2, 0.08, 8);
    CHECK(std::abs(eval_F3(even, 0.0)) < 1e-16);
}

TEST_CASE("F2 equals its antisymmetrized quadrature") {
    // swapping x <-> y flips the sign of both cos(x-y)(V'(y)-V'(x)) factors;
    // evaluating at x and at the reflected point -x of an even V must agree
    // up to the sign pattern of an odd function.
    const FourierBoundary v = mode(2, 0.05, 8);
    for (double x : {0.4, 1.3, 2.6}) {
        CHECK(eval_F2(v, x) == doctest::Approx(-eval_F2(v, kTwoPi - x)).epsilon(1e-12));
        CHECK(eval_F1(v, x) == doctest::Approx(-eval_F1(v, kTwoPi - x)).epsilon(1e-12));
    }
}

TEST_CASE("F1 Taylor consistency against the analytic directional derivative") {
    for (int k : {2, 3}) {
        const double eps1 = 1e-4, eps2 = 1e-5;
        for (double x : {0.0, 0.7, 2.1}) {
            const double d1 = eval_F1(mode(k, eps1, 8), x) / eps1 - f1_directional_cos(k, x);
            const double d2 = eval_F1(mode(k, eps2, 8), x) / eps2 - f1_directional_cos(k, x);
            CHECK(std::abs(d1) < 50 * eps1);
            CHECK(std::abs(d2) < 50 * eps2);
        }
    }
}

TEST_CASE("quadrature self-convergence") {
    const FourierBoundary v = mode(2, 0.05, 32);
    QuadratureConfig q1, q2;
    q1.nodes = 8 * 65;
    q2.nodes = 16 * 65;
    const double s1 = eval_contour_residual({v, 0.25}, q1).sup_norm;
    const double s2 = eval_contour_residual({v, 0.25}, q2).sup_norm;
    CHECK(std::abs(s1 - s2) < 1e-10);

    std::vector<double> a(32, 0.0), b(32, 0.0);
    a[1] = 0.12;
    a[2] = 0.06;
    b[4] = 0.1;
    a[7] = -0.02;
    const FourierBoundary mixed(1.0, a, b);
    const double m1 = eval_contour_residual({mixed, 0.3}, q1).sup_norm;
    const double m2 = eval_contour_residual({mixed, 0.3}, q2).sup_norm;
    CHECK(std::abs(m1 - m2) < 1e-9);
}

TEST_CASE("Kirchhoff ellipse rotates with omega = ab/(a+b)^2") {
    const double a = 1.2, b = 1.0 / 1.2;
    const double omega = a * b / ((a + b) * (a + b));
    const FourierBoundary e = FourierBoundary::from_ellipse(a, b, 128).normalized_mean();
    const ResidualField r = eval_contour_residual({e, omega});
    CHECK(r.sup_norm < 1e-6);
    CHECK(r.sup_norm < 1e-10);  // product weights leave only roundoff

    // a non-solution is detected well away from tolerance
    const ResidualField bad = eval_contour_residual({mode(2, 0.05, 32), 0.25});
    CHECK(bad.sup_norm > 1e-4);
}

TEST_CASE("rotation equivariance of the residual") {
    std::vector<double> a(32, 0.0), b(32, 0.0);
    a[1] = 0.06;
    a[2] = 0.03;
    b[3] = 0.02;
    const FourierBoundary v(1.0, a, b);
    const double phi = 0.6;
    const FourierBoundary vr = v.rotated(phi);

    // pointwise: F_i(rotate(V, phi))(x) = F_i(V)(x - phi)
    for (double x : {0.0, 0.9, 2.7, 5.1}) {
        CHECK(std::abs(eval_F1(vr, x) - eval_F1(v, x - phi)) < 1e-12);
        CHECK(std::abs(eval_F2(vr, x) - eval_F2(v, x - phi)) < 1e-12);
        CHECK(std::abs(eval_F3(vr, x) - eval_F3(v, x - phi)) < 1e-12);
    }

    // spectral form: residual_rot(theta) = residual(theta - phi)
    const ResidualField r0 = eval_contour_residual({v, 0.27});
    const ResidualField r1 = eval_contour_residual({vr, 0.27});
    for (int k = 1; k <= 32; ++k) {
        const double c0 = r0.cosine_coeffs[k - 1], s0 = r0.sine_coeffs[k - 1];
        const double expect_c = c0 * std::cos(k * phi) - s0 * std::sin(k * phi);
        const double expect_s = s0 * std::cos(k * phi) + c0 * std::sin(k * phi);
        CHECK(std::abs(r1.cosine_coeffs[k - 1] - expect_c) < 1e-10);
        CHECK(std::abs(r1.sine_coeffs[k - 1] - expect_s) < 1e-10);
    }
}

TEST_CASE("even V maps to odd residual") {
    std::vector<double> a(16, 0.0), b(16, 0.0);
    a[1] = 0.1;
    a[3] = 0.04;
    const ResidualField r = eval_contour_residual({FourierBoundary(1.0, a, b), 0.22});
    for (double c : r.cosine_coeffs) CHECK(std::abs(c) < 1e-10);
}

TEST_CASE("config validation and singular geometry") {
    QuadratureConfig q;
    CHECK(q.resolve_nodes(16) == 8 * 33);
    q.nodes = 50;  // below the 4*(2N+1) floor
    CHECK(q.resolve_nodes(16) == 4 * 33);

    // mean radius must be normalized on entry
    CHECK_THROWS_AS(eval_contour_residual({FourierBoundary::disk(2.0, 4), 0.25}),
                    std::invalid_argument);
}
