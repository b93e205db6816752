#pragma once

#include <utility>
#include <vector>

namespace vstate {

/// Star-shaped patch boundary R(theta) = mean_radius * (1 + V(theta)) with
/// V(theta) = sum_k a_k cos(k theta) + b_k sin(k theta).  V has zero mean by
/// construction: the coefficient arrays start at k = 1.
class FourierBoundary {
  public:
    /// Unit disk (no perturbation modes).
    FourierBoundary();

    /// Throws std::invalid_argument if mean_radius <= 0, coefficients are not
    /// finite, the two arrays differ in length, or min(1 + V) <= 0.
    FourierBoundary(double mean_radius, std::vector<double> cos_coeffs,
                    std::vector<double> sin_coeffs);

    static FourierBoundary disk(double radius = 1.0, int modes = 0);

    /// Fourier projection of the ellipse radius a*b/sqrt(b^2 cos^2 + a^2 sin^2).
    /// Only even cosine modes are nonzero.  Throws if `modes` is too small to
    /// resolve the aspect ratio (projection sup error above `projection_tol`).
    static FourierBoundary from_ellipse(double a_semi, double b_semi, int modes,
                                        double projection_tol = 1e-9,
                                        double* projection_error = nullptr);

    int modes() const { return static_cast<int>(cos_.size()); }
    double mean_radius() const { return mean_radius_; }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

    /// R(theta); 2*pi periodic, strictly positive.
    double radius(double theta) const;
    /// Termwise derivative R'(theta).
    double radius_derivative(double theta) const;
    /// V(theta) and V'(theta) (dimensionless perturbation).
    double perturbation(double theta) const;
    double perturbation_derivative(double theta) const;

    /// Boundary of the set rotated counterclockwise by phi:
    /// R_new(theta) = R(theta - phi).
    FourierBoundary rotated(double phi) const;

    /// Same set up to dilation, with mean radius 1.
    FourierBoundary normalized_mean() const;

    /// Copy with the coefficient arrays padded or truncated to `modes`.
    FourierBoundary resized(int modes) const;

    /// Samples of R on the uniform grid theta_i = 2 pi i / m.  Requires
    /// m >= 2*modes()+1 for a lossless round trip through from_grid.
    std::vector<double> to_grid(int m) const;
    static FourierBoundary from_grid(const std::vector<double>& values, int modes);

    /// min over theta of (1 + V), sampled densely (16 N points).
    double min_radius_factor() const;

  private:
    double mean_radius_ = 1.0;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// Candidate V-state: a boundary together with the angular velocity.
struct PatchState {
    FourierBoundary boundary;
    double omega = 0.0;
};

/// Evaluates V and V' at every angle theta0 + 2 pi j / m in one pass.
void perturbation_on_grid(const FourierBoundary& b, int m,
                          std::vector<double>& values,
                          std::vector<double>& derivatives, double theta0 = 0.0);

}  // namespace vstate
