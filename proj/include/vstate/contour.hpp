#pragma once

#include <stdexcept>
#include <vector>

#include "vstate/fourier_boundary.hpp"

namespace vstate {

/// Thrown when the log argument of the contour kernel is non-positive off the
/// diagonal, a proxy for boundary self-intersection.
class SingularGeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QuadratureConfig {
    /// Inner-integral node count M.  0 selects the default 8*(2N+1).
    /// The effective count is rounded up to an even multiple of the
    /// collocation grid size 2N+1 and clamped to at least 4*(2N+1).
    int nodes = 0;
    enum class DiagonalRule { limit_value };
    DiagonalRule diagonal_rule = DiagonalRule::limit_value;
    /// Finite-difference step used by the Jacobian built on top of this config.
    double fd_step = 1e-6;

    int resolve_nodes(int modes) const;
};

/// Values of the contour functional F(Omega, V) on the collocation grid
/// theta_i = 2 pi i / (2N+1), together with its sine/cosine content.
struct ResidualField {
    std::vector<double> grid_values;
    std::vector<double> sine_coeffs;    // k = 1..N
    std::vector<double> cosine_coeffs;  // k = 1..N
    double sup_norm = 0.0;
};

/// The three nonlinear integral terms, evaluated pointwise at angle x.
/// The boundary must have mean radius 1.  The quadrature places x on the
/// (shifted) uniform grid so the diagonal node carries its limit value; the
/// log-singular factor is integrated with uniform-grid product weights.
double eval_F1(const FourierBoundary& v, double x, const QuadratureConfig& q = {});
double eval_F2(const FourierBoundary& v, double x, const QuadratureConfig& q = {});
double eval_F3(const FourierBoundary& v, double x, const QuadratureConfig& q = {});

/// F(Omega, V)(x_i) = Omega (1+V) V' - sum_i F_i(V) on the collocation grid.
ResidualField eval_contour_residual(const PatchState& p, const QuadratureConfig& q = {});

/// Quadrature weights w_j on the uniform m-point grid (m even) such that
/// sum_j w_j phi(u_j) = int_0^{2pi} ln(4 sin^2(u/2)) phi(u) du exactly for
/// trigonometric polynomials phi of degree < m/2.  Shared by the contour and
/// stream-field quadratures; cached per m.
const std::vector<double>& log_kernel_weights(int m);

}  // namespace vstate
