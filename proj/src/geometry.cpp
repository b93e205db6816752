#include "vstate/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vstate {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::disk: return "disk";
        case Classification::ellipse: return "ellipse";
        default: return "other";
    }
}

double area(const FourierBoundary& b) {
    // Parseval: int R^2 = lam^2 (2 pi + pi sum (a_k^2 + b_k^2))
    double energy = 0.0;
    for (double a : b.cos_coeffs()) energy += a * a;
    for (double s : b.sin_coeffs()) energy += s * s;
    const double lam = b.mean_radius();
    return kPi * lam * lam * (1.0 + 0.5 * energy);
}

Eigen::Vector2d center_of_vorticity(const FourierBoundary& b) {
    const int m = std::max(64, 4 * (b.modes() + 2));  // exact for R^3 harmonics
    double ix = 0.0, iy = 0.0;
    for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * i / m;
        const double r = b.radius(th);
        const double r3 = r * r * r / 3.0;
        ix += r3 * std::cos(th);
        iy += r3 * std::sin(th);
    }
    const double scale = kTwoPi / m / area(b);
    return Eigen::Vector2d(ix * scale, iy * scale);
}

double symmetric_difference_area(const FourierBoundary& b1, const FourierBoundary& b2) {
    const int m = std::max(16384, 32 * std::max(b1.modes(), b2.modes()));
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * i / m;
        const double r1 = b1.radius(th);
        const double r2 = b2.radius(th);
        acc += std::abs(r1 * r1 - r2 * r2);
    }
    return 0.5 * acc * kTwoPi / m;
}

std::pair<double, double> radial_bounds(const FourierBoundary& b) {
    const int m = std::max(512, 16 * b.modes());
    double lo = b.radius(0.0), hi = lo;
    double th_lo = 0.0, th_hi = 0.0;
    for (int i = 1; i < m; ++i) {
        const double th = kTwoPi * i / m;
        const double r = b.radius(th);
        if (r < lo) { lo = r; th_lo = th; }
        if (r > hi) { hi = r; th_hi = th; }
    }
    const double step = kTwoPi / m;
    auto refine = [&](double th, bool maximize) {
        double a = th - step, c = th + step;
        for (int it = 0; it < 60; ++it) {
            const double m1 = a + (c - a) / 3.0;
            const double m2 = c - (c - a) / 3.0;
            const bool keep_left = maximize ? (b.radius(m1) > b.radius(m2))
                                            : (b.radius(m1) < b.radius(m2));
            (keep_left ? c : a) = keep_left ? m2 : m1;
        }
        return b.radius(0.5 * (a + c));
    };
    return {refine(th_lo, false), refine(th_hi, true)};
}

namespace {

// L2(T) distance between the radius functions of two boundaries.
double radius_l2_distance(const FourierBoundary& b1, const FourierBoundary& b2) {
    const double l1 = b1.mean_radius(), l2 = b2.mean_radius();
    double acc = kTwoPi * (l1 - l2) * (l1 - l2);
    const int n = std::max(b1.modes(), b2.modes());
    const auto coeff = [](const std::vector<double>& v, int k) {
        return k < static_cast<int>(v.size()) ? v[k] : 0.0;
    };
    for (int k = 0; k < n; ++k) {
        const double da = l1 * coeff(b1.cos_coeffs(), k) - l2 * coeff(b2.cos_coeffs(), k);
        const double db = l1 * coeff(b1.sin_coeffs(), k) - l2 * coeff(b2.sin_coeffs(), k);
        acc += kPi * (da * da + db * db);
    }
    return std::sqrt(acc);
}

}  // namespace

ClassifyResult classify(const FourierBoundary& b, double tol) {
    if (center_of_vorticity(b).norm() > tol) {
        throw std::invalid_argument("classify requires a centered boundary (|center| <= tol)");
    }
    // Align the mode-2 phase so the sine part vanishes and a_2 >= 0.
    FourierBoundary aligned = b;
    if (b.modes() >= 2) {
        const double a2 = b.cos_coeffs()[1], b2 = b.sin_coeffs()[1];
        if (a2 != 0.0 || b2 != 0.0) {
            aligned = b.rotated(-0.5 * std::atan2(b2, a2));
        }
    }
    const double lam = aligned.mean_radius();

    ClassifyResult res;
    double energy = 0.0;
    for (double a : aligned.cos_coeffs()) energy += a * a;
    for (double s : aligned.sin_coeffs()) energy += s * s;
    const double disk_distance = lam * std::sqrt(kPi * energy);
    if (disk_distance < tol) {
        res.classification = Classification::disk;
        res.residual = disk_distance;
        res.fit_a = res.fit_b = lam;
        return res;
    }

    // Two-parameter Gauss-Newton fit of the exact ellipse family on the
    // stacked coefficient residual (k = 0 term, then cos and sin modes).
    const int n = std::max(aligned.modes(), 2);
    const double c2 = aligned.modes() >= 2 ? aligned.cos_coeffs()[1] : 0.0;
    double sa = lam * (1.0 + std::abs(c2));
    double sb = lam * std::max(1.0 - std::abs(c2), 0.05);
    auto residual_vec = [&](double pa, double pb) {
        const FourierBoundary e = FourierBoundary::from_ellipse(pa, pb, n, 1e300);
        Eigen::VectorXd r(2 * n + 1);
        const double le = e.mean_radius();
        r[0] = std::sqrt(kTwoPi) * (lam - le);
        const auto coeff = [](const std::vector<double>& v, int k) {
            return k < static_cast<int>(v.size()) ? v[k] : 0.0;
        };
        const double sq = std::sqrt(kPi);
        for (int k = 0; k < n; ++k) {
            r[1 + k] = sq * (lam * coeff(aligned.cos_coeffs(), k) - le * coeff(e.cos_coeffs(), k));
            r[1 + n + k] = sq * lam * coeff(aligned.sin_coeffs(), k);
        }
        return r;
    };
    Eigen::VectorXd r = residual_vec(sa, sb);
    const double hstep = 1e-7;
    for (int it = 0; it < 25; ++it) {
        Eigen::MatrixXd jac(r.size(), 2);
        jac.col(0) = (residual_vec(sa + hstep, sb) - residual_vec(sa - hstep, sb)) / (2 * hstep);
        jac.col(1) = (residual_vec(sa, sb + hstep) - residual_vec(sa, sb - hstep)) / (2 * hstep);
        const Eigen::Vector2d step =
            (jac.transpose() * jac).ldlt().solve(jac.transpose() * r);
        if (!step.allFinite()) break;
        sa = std::max(sa - step[0], 1e-3);
        sb = std::max(sb - step[1], 1e-3);
        r = residual_vec(sa, sb);
        if (step.norm() < 1e-13) break;
    }
    res.residual = r.norm();
    res.fit_a = sa;
    res.fit_b = sb;
    res.classification = res.residual < tol ? Classification::ellipse : Classification::other;
    return res;
}

int detect_fold(const FourierBoundary& b, double* leakage) {
    const auto& ac = b.cos_coeffs();
    const auto& bc = b.sin_coeffs();
    const int n = b.modes();
    double total = 0.0;
    for (int k = 0; k < n; ++k) total += ac[k] * ac[k] + bc[k] * bc[k];
    if (total < 1e-24) {
        if (leakage) *leakage = 0.0;
        return 0;
    }
    int best = 1;
    double best_energy = -1.0;
    for (int m = 2; m <= n; ++m) {
        double e = 0.0;
        for (int k = m; k <= n; k += m) e += ac[k - 1] * ac[k - 1] + bc[k - 1] * bc[k - 1];
        if (e > best_energy + 1e-30) {
            best_energy = e;
            best = m;
        }
    }
    if (leakage) *leakage = std::sqrt(std::max(total - best_energy, 0.0));
    return best;
}

ShapeReport shape_report(const FourierBoundary& b, double tol) {
    ShapeReport rep;
    rep.area = area(b);
    rep.center = center_of_vorticity(b);
    rep.sym_diff_to_unit_disk = symmetric_difference_area(b, FourierBoundary::disk());
    const auto [lo, hi] = radial_bounds(b);
    rep.radial_min = lo;
    rep.radial_max = hi;
    if (rep.center.norm() > tol) {
        rep.classification = Classification::other;
        rep.classification_residual = rep.center.norm();
    } else {
        const ClassifyResult c = classify(b, tol);
        rep.classification = c.classification;
        rep.classification_residual = c.residual;
    }
    return rep;
}

}  // namespace vstate
