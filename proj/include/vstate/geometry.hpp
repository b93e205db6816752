#pragma once

#include <Eigen/Dense>
#include <utility>

#include "vstate/fourier_boundary.hpp"

namespace vstate {

enum class Classification { disk, ellipse, other };

const char* to_string(Classification c);

struct ClassifyResult {
    Classification classification = Classification::other;
    double residual = 0.0;  // L2(T) distance of R to the best fit
    double fit_a = 0.0;     // ellipse semi-axes of the best fit, when relevant
    double fit_b = 0.0;
};

struct ShapeReport {
    double area = 0.0;
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    double sym_diff_to_unit_disk = 0.0;
    double radial_min = 0.0;
    double radial_max = 0.0;
    Classification classification = Classification::other;
    double classification_residual = 0.0;
};

/// (1/2) int R^2 dtheta, closed form from the coefficients.
double area(const FourierBoundary& b);

/// Center of vorticity (integral of x over the patch) / area.
Eigen::Vector2d center_of_vorticity(const FourierBoundary& b);

/// (1/2) int |R1^2 - R2^2| dtheta for two boundaries star-shaped about the origin.
double symmetric_difference_area(const FourierBoundary& b1, const FourierBoundary& b2);

/// (min, max) of R over dense sampling plus local refinement.
std::pair<double, double> radial_bounds(const FourierBoundary& b);

/// Disk / ellipse / other, by coefficient energy and a two-parameter fit of
/// the exact ellipse family.  Requires |center_of_vorticity| <= tol; the
/// mode-2 phase is aligned internally, so the result is rotation invariant.
ClassifyResult classify(const FourierBoundary& b, double tol = 1e-7);

/// Dominant m-fold symmetry: the m >= 2 concentrating the most coefficient
/// energy on multiples of m.  leakage is the off-m coefficient magnitude.
/// Returns 0 for (near) disks.
int detect_fold(const FourierBoundary& b, double* leakage = nullptr);

/// Full report; classification is `other` (residual = |center|) for
/// off-center boundaries instead of the strict precondition of classify().
ShapeReport shape_report(const FourierBoundary& b, double tol = 1e-7);

}  // namespace vstate
