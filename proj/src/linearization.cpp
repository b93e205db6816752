#include "vstate/linearization.hpp"

#include <cmath>
#include <stdexcept>

namespace vstate {

namespace {

ResidualField residual_with_mode(double omega, int k, double amp, int modes,
                                 const QuadratureConfig& q) {
    std::vector<double> a(modes, 0.0), b(modes, 0.0);
    a[k - 1] = amp;
    PatchState p{FourierBoundary(1.0, std::move(a), std::move(b)), omega};
    return eval_contour_residual(p, q);
}

int auto_modes(int k, int modes) { return modes > 0 ? modes : std::max(16, 2 * k); }

}  // namespace

double disk_multiplier(double omega, int k, double h, int modes, const QuadratureConfig& q) {
    if (k < 1) throw std::invalid_argument("mode index must be >= 1");
    if (h < 1e-8 || h > 1e-4) throw std::invalid_argument("step h must lie in [1e-8, 1e-4]");
    const int n = auto_modes(k, modes);
    if (n < k) throw std::invalid_argument("modes must be at least k");
    const ResidualField plus = residual_with_mode(omega, k, h, n, q);
    const ResidualField minus = residual_with_mode(omega, k, -h, n, q);
    return (plus.sine_coeffs[k - 1] - minus.sine_coeffs[k - 1]) / (2.0 * h);
}

double omega_cross_derivative(int k, double omega, double d_omega, double h,
                              const QuadratureConfig& q) {
    const double up = disk_multiplier(omega + d_omega, k, h, 0, q);
    const double dn = disk_multiplier(omega - d_omega, k, h, 0, q);
    return (up - dn) / (2.0 * d_omega);
}

double bifurcation_omega(int m) {
    if (m < 2) throw std::invalid_argument("bifurcation mode must be >= 2 (m = 1 is translation)");
    return (m - 1) / (2.0 * m);
}

double bifurcation_omega_root(int m, double tol) {
    if (m < 2) throw std::invalid_argument("bifurcation mode must be >= 2");
    // mu_m is affine in Omega; the secant iteration is exact up to noise.
    double x0 = 0.2, x1 = 0.45;
    double f0 = disk_multiplier(x0, m);
    double f1 = disk_multiplier(x1, m);
    for (int it = 0; it < 60; ++it) {
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = disk_multiplier(x1, m);
        if (std::abs(f1) < tol || std::abs(x1 - x0) < 1e-14) break;
    }
    return x1;
}

JacobianMatrix jacobian(const PatchState& p, const QuadratureConfig& q, double h) {
    const int n = p.boundary.modes();
    JacobianMatrix out;
    out.base_point = p;
    out.fd_step = h;
    out.matrix.resize(2 * n, 2 * n + 1);

    auto residual_of = [&](const std::vector<double>& a, const std::vector<double>& b,
                           double omega) {
        return eval_contour_residual({FourierBoundary(1.0, a, b), omega}, q);
    };
    auto pack = [&](const ResidualField& r, Eigen::VectorXd& col) {
        for (int k = 0; k < n; ++k) {
            col[k] = r.sine_coeffs[k];
            col[n + k] = r.cosine_coeffs[k];
        }
    };

    Eigen::VectorXd plus(2 * n), minus(2 * n);
    std::vector<double> a = p.boundary.cos_coeffs();
    std::vector<double> b = p.boundary.sin_coeffs();
    for (int j = 0; j < 2 * n; ++j) {
        double& slot = j < n ? a[j] : b[j - n];
        const double saved = slot;
        slot = saved + h;
        pack(residual_of(a, b, p.omega), plus);
        slot = saved - h;
        pack(residual_of(a, b, p.omega), minus);
        slot = saved;
        out.matrix.col(j) = (plus - minus) / (2.0 * h);
    }
    const double domega = std::max(h, 1e-7);
    pack(residual_of(a, b, p.omega + domega), plus);
    pack(residual_of(a, b, p.omega - domega), minus);
    out.matrix.col(2 * n) = (plus - minus) / (2.0 * domega);
    return out;
}

SpectrumReport compute_spectrum(double omega, int modes, double zero_tolerance) {
    if (modes < 2) throw std::invalid_argument("spectrum needs at least 2 modes");
    SpectrumReport rep;
    rep.omega = omega;
    rep.multipliers.resize(modes);
    const int n = std::max(16, 2 * modes);
    for (int k = 1; k <= modes; ++k) {
        rep.multipliers[k - 1] = disk_multiplier(omega, k, 1e-5, n);
    }
    // Fit mu_k(1/4) ~ kappa (1 - k/2) over the same modes to set the scale of
    // the zero test; sign and overall normalization are not pinned by the
    // analytic range formula, so kernels are located by magnitude only.
    double num = 0.0, den = 0.0;
    const int kfit = std::min(modes, 8);
    for (int k = 1; k <= kfit; ++k) {
        const double pattern = 1.0 - 0.5 * k;
        const double mu = disk_multiplier(0.25, k, 1e-5, n);
        num += mu * pattern;
        den += pattern * pattern;
    }
    rep.fitted_scale = std::abs(den > 0 ? num / den : 1.0);
    rep.zero_tolerance = zero_tolerance * std::max(rep.fitted_scale, 1e-3);
    rep.kernel_modes.push_back("omega_direction");
    for (int k = 1; k <= modes; ++k) {
        if (std::abs(rep.multipliers[k - 1]) <= rep.zero_tolerance) {
            rep.kernel_modes.push_back("cos " + std::to_string(k) + "theta");
            rep.kernel_modes.push_back("sin " + std::to_string(k) + "theta");
        }
    }
    return rep;
}

}  // namespace vstate
