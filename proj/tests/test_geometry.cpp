#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vstate/geometry.hpp"

using namespace vstate;

namespace {
constexpr double kPi = std::numbers::pi;

FourierBoundary mode(int k, double amp, int n = 8) {
    std::vector<double> a(n, 0.0), b(n, 0.0);
    a[k - 1] = amp;
    return FourierBoundary(1.0, a, b);
}

FourierBoundary random_boundary(std::mt19937_64& rng, int n, double scale) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> a(n), b(n);
    for (int k = 1; k <= n; ++k) {
        a[k - 1] = scale * g(rng) / (k * k);
        b[k - 1] = scale * g(rng) / (k * k);
    }
    return FourierBoundary(1.0, a, b);
}

// dense midpoint quadrature of the area integral of f over the patch
Eigen::Vector2d first_moment_2d(const FourierBoundary& b, int nr = 600, int nt = 1200) {
    double mx = 0.0, my = 0.0;
    for (int j = 0; j < nt; ++j) {
        const double th = 2 * kPi * (j + 0.5) / nt;
        const double r_out = b.radius(th);
        for (int i = 0; i < nr; ++i) {
            const double r = r_out * (i + 0.5) / nr;
            const double w = r * (r_out / nr) * (2 * kPi / nt);
            mx += w * r * std::cos(th);
            my += w * r * std::sin(th);
        }
    }
    return {mx, my};
}
}  // namespace

TEST_CASE("area") {
    CHECK(area(FourierBoundary::disk()) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(area(FourierBoundary::from_ellipse(1.2, 1.0 / 1.2, 64)) ==
          doctest::Approx(kPi).epsilon(1e-11));
    // Parseval on R^2
    const FourierBoundary s(1.3, {0.1}, {0.0});
    CHECK(area(s) == doctest::Approx(kPi * 1.3 * 1.3 * (1.0 + 0.1 * 0.1 / 2.0)).epsilon(1e-14));
}

TEST_CASE("center of vorticity") {
    CHECK(center_of_vorticity(FourierBoundary::disk()).norm() < 1e-15);
    CHECK(center_of_vorticity(FourierBoundary::from_ellipse(1.2, 1.0 / 1.2, 32)).norm() < 1e-13);

    // mode-1 shift against the dense 2D quadrature oracle
    const FourierBoundary shifted = mode(1, 0.05);
    const Eigen::Vector2d c = center_of_vorticity(shifted);
    const Eigen::Vector2d oracle = first_moment_2d(shifted) / area(shifted);
    CHECK((c - oracle).norm() < 1e-5);
    CHECK(c[0] == doctest::Approx(0.05).epsilon(0.1));  // a_1 lambda (1 + o(1))
    CHECK(std::abs(c[1]) < 1e-12);
}

TEST_CASE("symmetric difference") {
    const FourierBoundary b = mode(3, 0.07);
    CHECK(symmetric_difference_area(b, b) == 0.0);

    const FourierBoundary d1 = FourierBoundary::disk(1.0);
    const FourierBoundary d2 = FourierBoundary::disk(1.1);
    CHECK(symmetric_difference_area(d1, d2) == doctest::Approx(0.21 * kPi).epsilon(1e-12));

    // Monte-Carlo membership oracle
    const FourierBoundary e = FourierBoundary::from_ellipse(1.2, 1.0 / 1.2, 48);
    const double exact = symmetric_difference_area(e, d1);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.3, 1.3);
    const int samples = 4000000;
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        const double x = u(rng), y = u(rng);
        const double r = std::hypot(x, y);
        const double th = std::atan2(y, x);
        const bool in_disk = r < 1.0;
        const bool in_ellipse = r < e.radius(th);
        if (in_disk != in_ellipse) ++hits;
    }
    const double mc = 2.6 * 2.6 * static_cast<double>(hits) / samples;
    CHECK(std::abs(mc - exact) < 1.8e-3);
}

TEST_CASE("symmetric difference properties") {
    std::mt19937_64 rng(41);
    const FourierBoundary b1 = random_boundary(rng, 8, 0.05);
    const FourierBoundary b2 = random_boundary(rng, 8, 0.05);
    const FourierBoundary b3 = random_boundary(rng, 8, 0.05);
    const double d12 = symmetric_difference_area(b1, b2);
    const double d23 = symmetric_difference_area(b2, b3);
    const double d13 = symmetric_difference_area(b1, b3);
    CHECK(d13 <= d12 + d23 + 1e-12);
    CHECK(d12 > 0.0);
}

TEST_CASE("radial bounds") {
    const auto [dmin, dmax] = radial_bounds(FourierBoundary::disk());
    CHECK(dmin == doctest::Approx(1.0));
    CHECK(dmax == doctest::Approx(1.0));

    const auto [mn, mx] = radial_bounds(mode(2, 0.1));
    CHECK(mn == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(mx == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("classification") {
    const ClassifyResult disk = classify(FourierBoundary::disk(1.0, 8));
    CHECK(disk.classification == Classification::disk);
    CHECK(std::abs((disk.residual) - (0.0)) < (1e-14));

    const ClassifyResult ell = classify(FourierBoundary::from_ellipse(1.1, 1.0 / 1.1, 32));
    CHECK(ell.classification == Classification::ellipse);
    CHECK(ell.residual < 1e-10);
    CHECK(ell.fit_a == doctest::Approx(1.1).epsilon(1e-6));

    const ClassifyResult three = classify(mode(3, 0.05, 8));
    CHECK(three.classification == Classification::other);
    CHECK(three.residual > 1e-3);
}

TEST_CASE("classification is rotation invariant") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    const FourierBoundary e = FourierBoundary::from_ellipse(1.08, 1.0 / 1.08, 32);
    for (int i = 0; i < 5; ++i) {
        const ClassifyResult r = classify(e.rotated(u(rng)));
        CHECK(r.classification == Classification::ellipse);
        CHECK(r.residual < 1e-9);
    }
    const FourierBoundary t = mode(3, 0.04, 8);
    for (int i = 0; i < 5; ++i) {
        CHECK(classify(t.rotated(u(rng))).classification == Classification::other);
    }
}

TEST_CASE("classify rejects off-center input") {
    CHECK_THROWS_AS(classify(mode(1, 0.2)), std::invalid_argument);
}

TEST_CASE("fold detection") {
    double leak = 0.0;
    CHECK(detect_fold(FourierBoundary::disk(1.0, 8), &leak) == 0);
    CHECK(detect_fold(mode(3, 0.05, 12), &leak) == 3);
    CHECK(leak < 1e-15);

    std::vector<double> a(12, 0.0), b(12, 0.0);
    a[2] = 0.05;
    a[5] = 0.01;
    a[0] = 1e-6;
    const int fold = detect_fold(FourierBoundary(1.0, a, b), &leak);
    CHECK(fold == 3);
    CHECK(leak == doctest::Approx(1e-6).epsilon(1e-6));
}

TEST_CASE("shape report") {
    const ShapeReport rep = shape_report(FourierBoundary::from_ellipse(1.15, 1.0 / 1.15, 32));
    CHECK(rep.area == doctest::Approx(kPi).epsilon(1e-10));
    CHECK(rep.center.norm() < 1e-12);
    CHECK(rep.classification == Classification::ellipse);
    CHECK(rep.radial_max == doctest::Approx(1.15).epsilon(1e-10));
    CHECK(rep.radial_min == doctest::Approx(1.0 / 1.15).epsilon(1e-10));
    CHECK(rep.sym_diff_to_unit_disk > 0.1);

    // off-center input degrades to `other` instead of throwing
    CHECK(shape_report(mode(1, 0.2)).classification == Classification::other);
}
