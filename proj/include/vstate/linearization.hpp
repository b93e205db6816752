#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "vstate/contour.hpp"
#include "vstate/fourier_boundary.hpp"

namespace vstate {

/// Per-mode multipliers of the disk linearization.  Acting on cos(k theta) the
/// operator yields mu_k sin(k theta); acting on sin(k theta) it yields
/// -mu_k cos(k theta).
struct SpectrumReport {
    double omega = 0.0;
    std::vector<double> multipliers;          // mu_k, k = 1..modes
    std::vector<std::string> kernel_modes;    // "omega_direction", "cos 2theta", ...
    double zero_tolerance = 0.0;              // absolute threshold actually applied
    double fitted_scale = 0.0;                // |kappa| from the mu_k ~ kappa (1 - k/2) fit
};

/// Dense finite-difference Jacobian of the residual coefficients.
/// Rows: sine coefficients 1..N, then cosine coefficients 1..N (2N rows).
/// Columns: d a_k (k=1..N), d b_k (k=1..N), d Omega (2N+1 columns).
struct JacobianMatrix {
    Eigen::MatrixXd matrix;
    PatchState base_point;
    double fd_step = 0.0;
};

/// mu_k(Omega) by central differences of the residual along cos(k theta).
/// h must lie in [1e-8, 1e-4].  `modes` 0 selects max(16, 2k).
double disk_multiplier(double omega, int k, double h = 1e-5, int modes = 0,
                       const QuadratureConfig& q = {});

/// Mixed central difference of F in (Omega, amplitude of cos k theta) at the
/// disk; equals -k analytically.
double omega_cross_derivative(int k, double omega = 0.25, double d_omega = 1e-3,
                              double h = 1e-5, const QuadratureConfig& q = {});

/// Exact bifurcation point (m-1)/(2m); m >= 2.
double bifurcation_omega(int m);

/// Numerical root of mu_m(Omega), for cross-checking bifurcation_omega.
double bifurcation_omega_root(int m, double tol = 1e-10);

JacobianMatrix jacobian(const PatchState& p, const QuadratureConfig& q = {},
                        double h = 1e-6);

/// Multipliers k = 1..modes at the given Omega, kernel detection, and the
/// fitted proportionality constant of the (1 - k/2) pattern.
SpectrumReport compute_spectrum(double omega, int modes, double zero_tolerance = 1e-8);

}  // namespace vstate
