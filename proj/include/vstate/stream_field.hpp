#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vstate/fourier_boundary.hpp"

namespace vstate {

struct StreamSample {
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    double psi = 0.0;
    double psi_r = 0.0;      // dPsi/dr
    double psi_theta = 0.0;  // dPsi/dtheta
};

/// Relative stream function of the unit disk rotating with angular velocity
/// omega: (1-2w)(|x|^2-1)/4 inside, -w(|x|^2-1)/2 + ln|x|/2 outside.
double psi0(double omega, const Eigen::Vector2d& x);
Eigen::Vector2d psi0_gradient(double omega, const Eigen::Vector2d& x);

/// Relative stream function Psi = newtonian_potential - omega |x|^2 / 2 + c of
/// a candidate patch.  The constant c is fixed so Psi has zero mean over the
/// boundary, which reduces to the exact boundary condition Psi = 0 on dD when
/// the patch is a V-state.
///
/// The Newtonian potential (1/2pi) int_D ln|x-y| dA is converted to a one
/// dimensional boundary integral.  Off-boundary points use the plain
/// trapezoid rule; on-boundary evaluation shifts the grid onto the target
/// point and integrates the ln(4 sin^2(u/2)) factor with its exact
/// uniform-grid weights, so both paths are spectrally accurate.
class StreamField {
  public:
    explicit StreamField(PatchState p, int boundary_nodes = 0);

    const PatchState& patch() const { return patch_; }
    int nodes() const { return nodes_; }
    /// The additive constant c.
    double boundary_offset() const { return offset_; }

    double newtonian_potential(const Eigen::Vector2d& x) const;
    Eigen::Vector2d potential_gradient(const Eigen::Vector2d& x) const;
    double newtonian_potential_on_boundary(double theta) const;
    Eigen::Vector2d potential_gradient_on_boundary(double theta) const;

    double psi(const Eigen::Vector2d& x) const;
    StreamSample sample(const Eigen::Vector2d& x) const;
    StreamSample sample_on_boundary(double theta) const;

    /// sup |psi| over the boundary sampling used for the offset.
    double boundary_flatness() const;

  private:
    PatchState patch_;
    int nodes_ = 0;
    double offset_ = 0.0;
    // Boundary tables on the unshifted grid, for off-boundary quadrature.
    std::vector<double> bx_, by_, bxp_, byp_;
    std::vector<double> boundary_potential_;  // N - omega R^2/2 at offset samples
};

double newtonian_potential(const FourierBoundary& b, const Eigen::Vector2d& x,
                           int nodes = 0);
StreamSample relative_stream(const PatchState& p, const Eigen::Vector2d& x,
                             int nodes = 0);

/// V-state certificate: sup |Psi| over a 4N-point boundary sampling after the
/// zero-mean normalization.
double boundary_flatness(const PatchState& p, int nodes = 0);

struct GradientDeviation {
    double grad_sup = 0.0;       // sup over the annulus of |grad(Psi - Psi0)|
    double psi_r_sup = 0.0;      // sup over boundary samples of |Psi_r - 1/4|
    double psi_theta_sup = 0.0;  // sup over the annulus of |Psi_theta|
};

/// Sampled over the annulus 2/3 <= |x| <= 4/3 on a polar grid, skipping
/// points within `clearance` of the patch boundary.
GradientDeviation gradient_deviation(const PatchState& p, int radial_samples = 12,
                                     int angular_samples = 64,
                                     double clearance = 0.02, int nodes = 0);

struct SteinerResult {
    double value = 0.0;  // integral over D of |x-y|^-1 dA(y)
    double ratio = 0.0;  // value / sqrt(area)
};

/// Polar quadrature about an interior point x; the radial integral of the
/// 1/r singularity is the exit distance, found per direction by bisection.
/// Throws std::invalid_argument when x lies outside the patch.
SteinerResult steiner_integral(const FourierBoundary& b, const Eigen::Vector2d& x,
                               int directions = 512);

}  // namespace vstate
