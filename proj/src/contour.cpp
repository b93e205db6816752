#include "vstate/contour.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace vstate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KernelTables {
    int m = 0;
    std::vector<double> sin_d;   // sin(2 pi d / m)
    std::vector<double> cos_d;   // cos(2 pi d / m)
    std::vector<double> inv_s2;  // 1 / (4 sin^2(pi d / m)), d > 0
    std::vector<double> wlog;    // product weights for the ln(4 sin^2) factor
};

std::shared_ptr<const KernelTables> tables_for(int m) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const KernelTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    auto t = std::make_shared<KernelTables>();
    t->m = m;
    t->sin_d.resize(m);
    t->cos_d.resize(m);
    t->inv_s2.resize(m);
    t->inv_s2[0] = 0.0;
    for (int d = 0; d < m; ++d) {
        const double u = kTwoPi * d / m;
        t->sin_d[d] = std::sin(u);
        t->cos_d[d] = std::cos(u);
        if (d > 0) {
            const double s = 2.0 * std::sin(0.5 * u);
            t->inv_s2[d] = 1.0 / (s * s);
        }
    }
    t->wlog = std::vector<double>(m, 0.0);
    // Interpolatory weights from int ln(4 sin^2(u/2)) cos(ku) du = -2 pi / k.
    const int half = m / 2;
    for (int j = 0; j < m; ++j) {
        const double u = kTwoPi * j / m;
        double w = 0.0;
        for (int k = 1; k < half; ++k) {
            w += (-2.0 / k) * std::cos(k * u);
        }
        w *= 2.0 * kPi / m;
        w += (-2.0 * kPi / half) * std::cos(half * u) / m;
        t->wlog[j] = w;
    }
    auto res = cache.emplace(m, std::move(t));
    return res.first->second;
}

void require_unit_mean(const FourierBoundary& b) {
    if (std::abs(b.mean_radius() - 1.0) > 1e-12) {
        throw std::invalid_argument("contour functional requires mean radius 1; normalize first");
    }
}

// One collocation-point evaluation against precomputed grid samples of V, V'.
// x is grid node j0; the inner grid is the full m-point grid.  Accumulates the
// three terms separately so the pointwise eval_Fi entry points can share it.
struct PointEval {
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
};

PointEval eval_point(const KernelTables& t, const std::vector<double>& v,
                     const std::vector<double>& vp, int j0) {
    const int m = t.m;
    const double vx = v[j0];
    const double cx = 1.0 + vx;
    const double px = vp[j0];
    double s1 = 0.0, l1 = 0.0, s2 = 0.0, l2 = 0.0, s3 = 0.0, l3 = 0.0;
    for (int j = 0; j < m; ++j) {
        const int d = (j0 - j + m) % m;
        if (d == 0) continue;  // diagonal: all three integrands vanish in the limit
        const double cy = 1.0 + v[j];
        const double dv = vx - v[j];
        const double arg = cx * cy + dv * dv * t.inv_s2[d];
        if (!(arg > 0.0)) {
            throw SingularGeometryError("non-positive log argument in contour kernel");
        }
        const double ln_smooth = std::log(arg);
        const double w = t.wlog[d];
        const double g1 = t.sin_d[d] * (cx * cy + px * vp[j]);
        const double g2 = t.cos_d[d] * cx * (vp[j] - px);
        const double g3 = t.cos_d[d] * px * dv;
        s1 += ln_smooth * g1;
        l1 += w * g1;
        s2 += ln_smooth * g2;
        l2 += w * g2;
        s3 += ln_smooth * g3;
        l3 += w * g3;
    }
    const double h = kTwoPi / m;
    PointEval out;
    out.f1 = (s1 * h + l1) / (4.0 * kPi);
    out.f2 = (s2 * h + l2) / (4.0 * kPi);
    out.f3 = (s3 * h + l3) / (4.0 * kPi);
    return out;
}

// Pointwise path for arbitrary x: the inner grid is shifted so that x is the
// node u = 0 and the tables apply unchanged.
PointEval eval_at_angle(const FourierBoundary& b, double x, const QuadratureConfig& q) {
    require_unit_mean(b);
    const int m = q.resolve_nodes(b.modes());
    const auto t = tables_for(m);
    std::vector<double> v(m), vp(m);
    for (int j = 0; j < m; ++j) {
        const double th = x + kTwoPi * j / m;
        v[j] = b.perturbation(th);
        vp[j] = b.perturbation_derivative(th);
    }
    return eval_point(*t, v, vp, 0);
}

}  // namespace

int QuadratureConfig::resolve_nodes(int modes) const {
    const int g = 2 * modes + 1;
    int mult = nodes <= 0 ? 8 : (nodes + g - 1) / g;
    if (mult < 4) mult = 4;
    if (mult % 2 != 0) ++mult;  // even m needed by the log-kernel weights
    return mult * g;
}

const std::vector<double>& log_kernel_weights(int m) {
    if (m % 2 != 0) throw std::invalid_argument("log kernel weights need an even node count");
    static std::mutex mu;
    static std::map<int, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        it = cache.emplace(m, tables_for(m)->wlog).first;
    }
    return it->second;
}

double eval_F1(const FourierBoundary& v, double x, const QuadratureConfig& q) {
    return eval_at_angle(v, x, q).f1;
}

double eval_F2(const FourierBoundary& v, double x, const QuadratureConfig& q) {
    return eval_at_angle(v, x, q).f2;
}

double eval_F3(const FourierBoundary& v, double x, const QuadratureConfig& q) {
    return eval_at_angle(v, x, q).f3;
}

ResidualField eval_contour_residual(const PatchState& p, const QuadratureConfig& q) {
    require_unit_mean(p.boundary);
    const int n = p.boundary.modes();
    const int g = 2 * n + 1;
    const int m = q.resolve_nodes(n);
    const int stride = m / g;
    const auto t = tables_for(m);

    std::vector<double> v, vp;
    perturbation_on_grid(p.boundary, m, v, vp);

    ResidualField out;
    out.grid_values.resize(g);
    for (int i = 0; i < g; ++i) {
        const int j0 = i * stride;
        const PointEval e = eval_point(*t, v, vp, j0);
        const double cx = 1.0 + v[j0];
        out.grid_values[i] = p.omega * cx * vp[j0] - (e.f1 + e.f2 + e.f3);
    }

    out.sine_coeffs.assign(n, 0.0);
    out.cosine_coeffs.assign(n, 0.0);
    for (int k = 1; k <= n; ++k) {
        double cs = 0.0, sn = 0.0;
        for (int i = 0; i < g; ++i) {
            const double th = kTwoPi * i / g;
            cs += out.grid_values[i] * std::cos(k * th);
            sn += out.grid_values[i] * std::sin(k * th);
        }
        out.cosine_coeffs[k - 1] = 2.0 * cs / g;
        out.sine_coeffs[k - 1] = 2.0 * sn / g;
    }
    out.sup_norm = 0.0;
    for (double r : out.grid_values) out.sup_norm = std::max(out.sup_norm, std::abs(r));
    return out;
}

}  // namespace vstate
