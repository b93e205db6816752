#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vstate/fourier_boundary.hpp"
#include "vstate/geometry.hpp"

using namespace vstate;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent polar-form oracle for the ellipse radius.
double ellipse_radius(double a, double b, double theta) {
    return a * b / std::hypot(b * std::cos(theta), a * std::sin(theta));
}

FourierBoundary mode(int k, double amp, int n = 8) {
    std::vector<double> a(n, 0.0), b(n, 0.0);
    a[k - 1] = amp;
    return FourierBoundary(1.0, a, b);
}
}  // namespace

TEST_CASE("radius evaluation") {
    CHECK(FourierBoundary::disk().radius(0.37) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mode(2, 0.1).radius(0.0) == doctest::Approx(1.1).epsilon(1e-14));

    const FourierBoundary e = FourierBoundary::from_ellipse(1.2, 1.0 / 1.2, 32);
    CHECK(e.radius(0.0) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(e.radius(kPi / 2) == doctest::Approx(1.0 / 1.2).epsilon(1e-12));
    for (double th : {0.3, 1.1, 2.9, 4.5}) {
        CHECK(e.radius(th) == doctest::Approx(ellipse_radius(1.2, 1.0 / 1.2, th)).epsilon(1e-12));
    }
}

TEST_CASE("radius is 2pi periodic") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 0.02);
    std::vector<double> a(12), b(12);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    const FourierBoundary f(1.0, a, b);
    // exact up to the rounding of theta + 2 pi itself
    for (double th : {0.0, 0.5, 2.0, 5.5}) {
        CHECK(std::abs(f.radius(th) - f.radius(th + 2 * kPi)) < 5e-15);
    }
}

TEST_CASE("radius derivative") {
    CHECK(FourierBoundary::disk().radius_derivative(1.2) == 0.0);
    CHECK(mode(2, 0.1).radius_derivative(kPi / 4) == doctest::Approx(-0.2).epsilon(1e-14));

    // central-difference oracle, O(h^2)
    const FourierBoundary e = FourierBoundary::from_ellipse(1.15, 0.9, 32);
    const double h = 1e-5;
    for (double th : {0.2, 1.0, 3.3}) {
        const double fd = (e.radius(th + h) - e.radius(th - h)) / (2 * h);
        CHECK(e.radius_derivative(th) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("rotation") {
    const FourierBoundary b = mode(2, 0.07);
    CHECK(b.rotated(0.0).cos_coeffs()[1] == doctest::Approx(0.07));

    // cos 2theta -> -cos 2theta under a quarter turn
    const FourierBoundary q = b.rotated(kPi / 2);
    CHECK(q.cos_coeffs()[1] == doctest::Approx(-0.07).epsilon(1e-14));
    CHECK(std::abs((q.sin_coeffs()[1]) - (0.0)) < (1e-15));

    // R_new(theta) = R(theta - phi)
    const double phi = 0.83;
    const FourierBoundary r = b.rotated(phi);
    for (double th : {0.1, 1.7, 4.0}) {
        CHECK(r.radius(th) == doctest::Approx(b.radius(th - phi)).epsilon(1e-14));
    }

    // group inverse to machine precision
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 0.01);
    std::vector<double> a(10), s(10);
    for (auto& v : a) v = g(rng);
    for (auto& v : s) v = g(rng);
    const FourierBoundary f(1.0, a, s);
    const FourierBoundary back = f.rotated(1.234).rotated(-1.234);
    for (int k = 0; k < 10; ++k) {
        CHECK(back.cos_coeffs()[k] == doctest::Approx(f.cos_coeffs()[k]).epsilon(1e-13));
        CHECK(back.sin_coeffs()[k] == doctest::Approx(f.sin_coeffs()[k]).epsilon(1e-13));
    }

    // area invariant, center transforms by the rotation
    const FourierBoundary shifted = mode(1, 0.05);
    CHECK(area(shifted.rotated(0.9)) == doctest::Approx(area(shifted)).epsilon(1e-13));
    const Eigen::Vector2d c0 = center_of_vorticity(shifted);
    const Eigen::Vector2d c1 = center_of_vorticity(shifted.rotated(0.9));
    const Eigen::Vector2d expect(std::cos(0.9) * c0[0] - std::sin(0.9) * c0[1],
                                 std::sin(0.9) * c0[0] + std::cos(0.9) * c0[1]);
    CHECK((c1 - expect).norm() < 1e-12);
}

TEST_CASE("normalize_mean") {
    const FourierBoundary b = FourierBoundary(1.0, {0.0, 0.2}, {0.0, 0.0});
    CHECK(b.normalized_mean().mean_radius() == 1.0);

    const FourierBoundary big(2.0, {0.0, 0.2}, {0.0, 0.0});
    const FourierBoundary norm = big.normalized_mean();
    CHECK(norm.mean_radius() == 1.0);
    // same set up to dilation
    for (double th : {0.0, 0.9, 2.2}) {
        CHECK(norm.radius(th) == doctest::Approx(big.radius(th) / 2.0).epsilon(1e-14));
    }
    // quadrature oracle: grid mean of R equals 1 after normalization
    const auto grid = norm.to_grid(64);
    double mean = 0.0;
    for (double v : grid) mean += v;
    CHECK(mean / grid.size() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("from_ellipse structure") {
    const FourierBoundary c = FourierBoundary::from_ellipse(1.0, 1.0, 16);
    for (double v : c.cos_coeffs()) CHECK(std::abs(v) < 1e-14);
    for (double v : c.sin_coeffs()) CHECK(v == 0.0);

    double err = 0.0;
    const FourierBoundary e = FourierBoundary::from_ellipse(1.2, 1.0 / 1.2, 64, 1e-9, &err);
    CHECK(err < 1e-12);
    for (int k = 1; k <= 64; ++k) {
        if (k % 2 == 1) CHECK(e.cos_coeffs()[k - 1] == 0.0);
        CHECK(e.sin_coeffs()[k - 1] == 0.0);
    }
    CHECK(area(e) == doctest::Approx(kPi).epsilon(1e-10));

    CHECK_THROWS_AS(FourierBoundary::from_ellipse(3.0, 1.0 / 3.0, 4),
                    std::invalid_argument);

    // swapped axes differ by a quarter turn
    const FourierBoundary f1 = FourierBoundary::from_ellipse(1.15, 0.87, 48);
    const FourierBoundary f2 = FourierBoundary::from_ellipse(0.87, 1.15, 48);
    const FourierBoundary f2r = f2.rotated(kPi / 2);
    for (int k = 0; k < 48; ++k) {
        CHECK(std::abs((f2r.cos_coeffs()[k]) - (f1.cos_coeffs()[k])) < (1e-12));
    }
}

TEST_CASE("grid round trip") {
    CHECK(FourierBoundary::disk().to_grid(8) == std::vector<double>(8, 1.0));

    // single mode, exact recovery
    const FourierBoundary one = mode(3, 1.0 / 3.0, 4);
    const FourierBoundary rec = FourierBoundary::from_grid(one.to_grid(64), 4);
    CHECK(rec.cos_coeffs()[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // property: random coefficients round trip below 1e-13
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 0.01);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> a(16), b(16);
        for (auto& v : a) v = g(rng);
        for (auto& v : b) v = g(rng);
        const FourierBoundary f(1.0 + 0.1 * rep, a, b);
        const FourierBoundary back = FourierBoundary::from_grid(f.to_grid(64), 16);
        CHECK(back.mean_radius() == doctest::Approx(f.mean_radius()).epsilon(1e-13));
        for (int k = 0; k < 16; ++k) {
            CHECK(std::abs((back.cos_coeffs()[k]) - (a[k])) < (1e-13));
            CHECK(std::abs((back.sin_coeffs()[k]) - (b[k])) < (1e-13));
        }
    }

    CHECK_THROWS_AS(mode(4, 0.1).to_grid(7), std::invalid_argument);
}

TEST_CASE("constructor rejects invalid input") {
    CHECK_THROWS_AS(FourierBoundary(-1.0, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(FourierBoundary(1.0, {0.5}, {}), std::invalid_argument);
    CHECK_THROWS_AS(FourierBoundary(1.0, {1.5}, {0.0}), std::invalid_argument);  // 1+V dips below 0
    CHECK_THROWS_AS(FourierBoundary(1.0, {std::nan("")}, {0.0}), std::invalid_argument);
}
