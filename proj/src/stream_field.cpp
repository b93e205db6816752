#include "vstate/stream_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vstate/contour.hpp"
#include "vstate/geometry.hpp"

namespace vstate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int resolve_stream_nodes(int modes, int requested) {
    if (requested > 0) return requested + (requested % 2);
    int m = std::max(2048, 16 * modes);
    return m + (m % 2);
}

struct BoundaryPoint {
    double r, rp;          // R, R'
    double x, y, xp, yp;   // position and theta-derivative
};

BoundaryPoint boundary_point(const FourierBoundary& b, double theta) {
    BoundaryPoint p{};
    p.r = b.radius(theta);
    p.rp = b.radius_derivative(theta);
    const double c = std::cos(theta), s = std::sin(theta);
    p.x = p.r * c;
    p.y = p.r * s;
    p.xp = p.rp * c - p.r * s;
    p.yp = p.rp * s + p.r * c;
    return p;
}

}  // namespace

double psi0(double omega, const Eigen::Vector2d& x) {
    const double r2 = x.squaredNorm();
    if (r2 < 1.0) return (1.0 - 2.0 * omega) * (r2 - 1.0) / 4.0;
    return -omega * (r2 - 1.0) / 2.0 + 0.25 * std::log(r2);
}

Eigen::Vector2d psi0_gradient(double omega, const Eigen::Vector2d& x) {
    const double r2 = x.squaredNorm();
    if (r2 < 1.0) return (1.0 - 2.0 * omega) / 2.0 * x;
    return -omega * x + x / (2.0 * r2);
}

StreamField::StreamField(PatchState p, int boundary_nodes) : patch_(std::move(p)) {
    nodes_ = resolve_stream_nodes(patch_.boundary.modes(), boundary_nodes);
    bx_.resize(nodes_);
    by_.resize(nodes_);
    bxp_.resize(nodes_);
    byp_.resize(nodes_);
    std::vector<double> v, vp;
    perturbation_on_grid(patch_.boundary, nodes_, v, vp);
    const double lam = patch_.boundary.mean_radius();
    for (int j = 0; j < nodes_; ++j) {
        const double th = kTwoPi * j / nodes_;
        const double r = lam * (1.0 + v[j]);
        const double rp = lam * vp[j];
        const double c = std::cos(th), s = std::sin(th);
        bx_[j] = r * c;
        by_[j] = r * s;
        bxp_[j] = rp * c - r * s;
        byp_[j] = rp * s + r * c;
    }
    // Zero-mean boundary condition fixes the additive constant.
    const int nb = std::max(64, 4 * patch_.boundary.modes());
    boundary_potential_.resize(nb);
    double mean = 0.0;
    for (int i = 0; i < nb; ++i) {
        const double th = kTwoPi * i / nb;
        const double r = patch_.boundary.radius(th);
        boundary_potential_[i] =
            newtonian_potential_on_boundary(th) - patch_.omega * r * r / 2.0;
        mean += boundary_potential_[i];
    }
    offset_ = -mean / nb;
}

double StreamField::newtonian_potential(const Eigen::Vector2d& x) const {
    double acc = 0.0;
    for (int j = 0; j < nodes_; ++j) {
        const double dx = bx_[j] - x[0];
        const double dy = by_[j] - x[1];
        const double r2 = dx * dx + dy * dy;
        const double jac = dx * byp_[j] - dy * bxp_[j];
        acc += (0.25 * std::log(r2) - 0.25) * jac;
    }
    return acc / nodes_;
}

Eigen::Vector2d StreamField::potential_gradient(const Eigen::Vector2d& x) const {
    double gx = 0.0, gy = 0.0;
    for (int j = 0; j < nodes_; ++j) {
        const double dx = bx_[j] - x[0];
        const double dy = by_[j] - x[1];
        const double r2 = dx * dx + dy * dy;
        const double jac = dx * byp_[j] - dy * bxp_[j];
        const double w = 0.25 * std::log(r2) - 0.25;
        gx += -dx * jac / (2.0 * r2) - w * byp_[j];
        gy += -dy * jac / (2.0 * r2) - w * (-bxp_[j]);
    }
    return Eigen::Vector2d(gx / nodes_, gy / nodes_);
}

double StreamField::newtonian_potential_on_boundary(double theta) const {
    const int m = nodes_;
    const FourierBoundary& b = patch_.boundary;
    const BoundaryPoint p0 = boundary_point(b, theta);
    std::vector<double> v, vp;
    perturbation_on_grid(b, m, v, vp, theta);
    const double lam = b.mean_radius();

    std::vector<double> jac(m);
    double smooth = 0.0;
    for (int j = 0; j < m; ++j) {
        const double u = kTwoPi * j / m;
        const double th = theta + u;
        const double r = lam * (1.0 + v[j]);
        const double rp = lam * vp[j];
        const double c = std::cos(th), s = std::sin(th);
        const double dx = r * c - p0.x;
        const double dy = r * s - p0.y;
        const double xp = rp * c - r * s;
        const double yp = rp * s + r * c;
        jac[j] = dx * yp - dy * xp;
        if (j == 0) continue;  // J vanishes at the target point
        const double r2 = dx * dx + dy * dy;
        const double s2 = 4.0 * std::sin(0.5 * u) * std::sin(0.5 * u);
        smooth += (0.25 * std::log(r2 / s2) - 0.25) * jac[j];
    }
    smooth *= kTwoPi / m;

    // ln(4 sin^2(u/2)) factor via its cosine moments; J is a trig polynomial.
    const int deg = std::min(m / 2 - 1, 2 * b.modes() + 4);
    double logsum = 0.0;
    for (int k = 1; k <= deg; ++k) {
        double alpha = 0.0;
        for (int j = 0; j < m; ++j) alpha += jac[j] * std::cos(k * kTwoPi * j / m);
        logsum += (2.0 * alpha / m) / k;
    }
    const double logpart = -2.0 * std::numbers::pi * 0.25 * logsum;
    return (smooth + logpart) / kTwoPi;
}

Eigen::Vector2d StreamField::potential_gradient_on_boundary(double theta) const {
    const int m = nodes_;
    const FourierBoundary& b = patch_.boundary;
    const BoundaryPoint p0 = boundary_point(b, theta);
    std::vector<double> v, vp;
    perturbation_on_grid(b, m, v, vp, theta);
    const double lam = b.mean_radius();

    std::vector<double> nx(m), ny(m);
    double gx = 0.0, gy = 0.0;
    for (int j = 0; j < m; ++j) {
        const double u = kTwoPi * j / m;
        const double th = theta + u;
        const double r = lam * (1.0 + v[j]);
        const double rp = lam * vp[j];
        const double c = std::cos(th), s = std::sin(th);
        const double dx = r * c - p0.x;
        const double dy = r * s - p0.y;
        const double xp = rp * c - r * s;
        const double yp = rp * s + r * c;
        nx[j] = yp;
        ny[j] = -xp;
        if (j == 0) {
            // double-layer term vanishes in the limit; the smooth log factor
            // tends to ln|y'(theta)|^2
            const double t2 = xp * xp + yp * yp;
            const double w = 0.25 * std::log(t2) - 0.25;
            gx += -w * nx[j];
            gy += -w * ny[j];
            continue;
        }
        const double r2 = dx * dx + dy * dy;
        const double jac = dx * yp - dy * xp;
        const double s2 = 4.0 * std::sin(0.5 * u) * std::sin(0.5 * u);
        const double w = 0.25 * std::log(r2 / s2) - 0.25;
        gx += -dx * jac / (2.0 * r2) - w * nx[j];
        gy += -dy * jac / (2.0 * r2) - w * ny[j];
    }
    gx *= kTwoPi / m;
    gy *= kTwoPi / m;

    const int deg = std::min(m / 2 - 1, b.modes() + 4);
    double sx = 0.0, sy = 0.0;
    for (int k = 1; k <= deg; ++k) {
        double ax = 0.0, ay = 0.0;
        for (int j = 0; j < m; ++j) {
            const double ck = std::cos(k * kTwoPi * j / m);
            ax += nx[j] * ck;
            ay += ny[j] * ck;
        }
        sx += (2.0 * ax / m) / k;
        sy += (2.0 * ay / m) / k;
    }
    gx += -0.25 * (-2.0 * std::numbers::pi) * sx;
    gy += -0.25 * (-2.0 * std::numbers::pi) * sy;
    return Eigen::Vector2d(gx / kTwoPi, gy / kTwoPi);
}

double StreamField::psi(const Eigen::Vector2d& x) const {
    return newtonian_potential(x) - patch_.omega * x.squaredNorm() / 2.0 + offset_;
}

StreamSample StreamField::sample(const Eigen::Vector2d& x) const {
    StreamSample s;
    s.position = x;
    s.psi = psi(x);
    const Eigen::Vector2d g = potential_gradient(x) - patch_.omega * x;
    const double r = x.norm();
    const Eigen::Vector2d rhat = r > 0 ? Eigen::Vector2d(x / r) : Eigen::Vector2d(1.0, 0.0);
    s.psi_r = g.dot(rhat);
    s.psi_theta = g.dot(Eigen::Vector2d(-x[1], x[0]));
    return s;
}

StreamSample StreamField::sample_on_boundary(double theta) const {
    StreamSample s;
    const double r = patch_.boundary.radius(theta);
    s.position = Eigen::Vector2d(r * std::cos(theta), r * std::sin(theta));
    s.psi = newtonian_potential_on_boundary(theta) -
            patch_.omega * r * r / 2.0 + offset_;
    const Eigen::Vector2d g =
        potential_gradient_on_boundary(theta) - patch_.omega * s.position;
    s.psi_r = g.dot(Eigen::Vector2d(std::cos(theta), std::sin(theta)));
    s.psi_theta = g.dot(Eigen::Vector2d(-s.position[1], s.position[0]));
    return s;
}

double StreamField::boundary_flatness() const {
    double sup = 0.0;
    for (double b : boundary_potential_) sup = std::max(sup, std::abs(b + offset_));
    return sup;
}

double newtonian_potential(const FourierBoundary& b, const Eigen::Vector2d& x, int nodes) {
    return StreamField({b, 0.0}, nodes).newtonian_potential(x);
}

StreamSample relative_stream(const PatchState& p, const Eigen::Vector2d& x, int nodes) {
    return StreamField(p, nodes).sample(x);
}

double boundary_flatness(const PatchState& p, int nodes) {
    return StreamField(p, nodes).boundary_flatness();
}

GradientDeviation gradient_deviation(const PatchState& p, int radial_samples,
                                     int angular_samples, double clearance, int nodes) {
    StreamField field(p, nodes);
    GradientDeviation out;
    for (int i = 0; i < radial_samples; ++i) {
        const double r = 2.0 / 3.0 + (4.0 / 3.0 - 2.0 / 3.0) * i / (radial_samples - 1.0);
        for (int j = 0; j < angular_samples; ++j) {
            const double th = kTwoPi * j / angular_samples;
            if (std::abs(r - p.boundary.radius(th)) < clearance) continue;
            const Eigen::Vector2d x(r * std::cos(th), r * std::sin(th));
            const Eigen::Vector2d g = field.potential_gradient(x) - p.omega * x;
            out.grad_sup = std::max(out.grad_sup, (g - psi0_gradient(p.omega, x)).norm());
            out.psi_theta_sup =
                std::max(out.psi_theta_sup, std::abs(g.dot(Eigen::Vector2d(-x[1], x[0]))));
        }
    }
    const int nb = std::max(64, 4 * p.boundary.modes());
    for (int i = 0; i < nb; ++i) {
        const StreamSample s = field.sample_on_boundary(kTwoPi * i / nb);
        out.psi_r_sup = std::max(out.psi_r_sup, std::abs(s.psi_r - 0.25));
    }
    return out;
}

SteinerResult steiner_integral(const FourierBoundary& b, const Eigen::Vector2d& x,
                               int directions) {
    const double theta_x = std::atan2(x[1], x[0]);
    if (x.norm() >= b.radius(theta_x)) {
        throw std::invalid_argument("steiner_integral expects an interior point");
    }
    double radius_max = 0.0;
    for (int i = 0; i < 256; ++i) {
        radius_max = std::max(radius_max, b.radius(kTwoPi * i / 256));
    }
    const double rmax = x.norm() + 1.5 * radius_max + 1.0;
    double total = 0.0;
    for (int i = 0; i < directions; ++i) {
        const double phi = kTwoPi * i / directions;
        const double cx = std::cos(phi), sy = std::sin(phi);
        auto outside = [&](double r) {
            const double px = x[0] + r * cx;
            const double py = x[1] + r * sy;
            return std::hypot(px, py) - b.radius(std::atan2(py, px));
        };
        double lo = 0.0, hi = rmax;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (outside(mid) > 0.0 ? hi : lo) = mid;
        }
        total += 0.5 * (lo + hi);
    }
    SteinerResult res;
    res.value = total * kTwoPi / directions;
    res.ratio = res.value / std::sqrt(area(b));
    return res;
}

}  // namespace vstate
