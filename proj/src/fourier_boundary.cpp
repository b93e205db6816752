#include "vstate/fourier_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vstate {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_finite(const std::vector<double>& v, const char* name) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(name) + " contains a non-finite value");
        }
    }
}
}  // namespace

FourierBoundary::FourierBoundary() = default;

FourierBoundary::FourierBoundary(double mean_radius, std::vector<double> cos_coeffs,
                                 std::vector<double> sin_coeffs)
    : mean_radius_(mean_radius), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (!(mean_radius_ > 0.0) || !std::isfinite(mean_radius_)) {
        throw std::invalid_argument("mean_radius must be positive and finite");
    }
    if (cos_.size() != sin_.size()) {
        throw std::invalid_argument("cos and sin coefficient arrays must have equal length");
    }
    check_finite(cos_, "cos_coeffs");
    check_finite(sin_, "sin_coeffs");
    if (min_radius_factor() <= 0.0) {
        throw std::invalid_argument("boundary is not representable: min(1 + V) <= 0");
    }
}

FourierBoundary FourierBoundary::disk(double radius, int modes) {
    return FourierBoundary(radius, std::vector<double>(modes, 0.0),
                           std::vector<double>(modes, 0.0));
}

double FourierBoundary::perturbation(double theta) const {
    // Incremental rotation avoids N trig calls per evaluation.
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0, v = 0.0;
    for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double cn = ck * c1 - sk * s1;
        const double sn = sk * c1 + ck * s1;
        ck = cn;
        sk = sn;
        v += cos_[k] * ck + sin_[k] * sk;
    }
    return v;
}

double FourierBoundary::perturbation_derivative(double theta) const {
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0, v = 0.0;
    for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double cn = ck * c1 - sk * s1;
        const double sn = sk * c1 + ck * s1;
        ck = cn;
        sk = sn;
        const double kk = static_cast<double>(k + 1);
        v += -kk * cos_[k] * sk + kk * sin_[k] * ck;
    }
    return v;
}

double FourierBoundary::radius(double theta) const {
    return mean_radius_ * (1.0 + perturbation(theta));
}

double FourierBoundary::radius_derivative(double theta) const {
    return mean_radius_ * perturbation_derivative(theta);
}

FourierBoundary FourierBoundary::rotated(double phi) const {
    // R_new(theta) = R(theta - phi)
    std::vector<double> a(cos_.size()), b(sin_.size());
    for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double kk = static_cast<double>(k + 1);
        const double c = std::cos(kk * phi), s = std::sin(kk * phi);
        a[k] = cos_[k] * c - sin_[k] * s;
        b[k] = sin_[k] * c + cos_[k] * s;
    }
    return FourierBoundary(mean_radius_, std::move(a), std::move(b));
}

FourierBoundary FourierBoundary::normalized_mean() const {
    return FourierBoundary(1.0, cos_, sin_);
}

FourierBoundary FourierBoundary::resized(int modes) const {
    if (modes < 0) throw std::invalid_argument("modes must be nonnegative");
    std::vector<double> a(modes, 0.0), b(modes, 0.0);
    const int n = std::min<int>(modes, static_cast<int>(cos_.size()));
    std::copy_n(cos_.begin(), n, a.begin());
    std::copy_n(sin_.begin(), n, b.begin());
    return FourierBoundary(mean_radius_, std::move(a), std::move(b));
}

std::vector<double> FourierBoundary::to_grid(int m) const {
    if (m < 2 * modes() + 1) {
        throw std::invalid_argument("grid size must be at least 2N+1 to avoid aliasing");
    }
    std::vector<double> v(m), vp(m);
    perturbation_on_grid(*this, m, v, vp);
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) out[i] = mean_radius_ * (1.0 + v[i]);
    return out;
}

FourierBoundary FourierBoundary::from_grid(const std::vector<double>& values, int modes) {
    const int m = static_cast<int>(values.size());
    if (m < 2 * modes + 1) {
        throw std::invalid_argument("grid size must be at least 2N+1 to recover N modes");
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= m;
    if (!(mean > 0.0)) throw std::invalid_argument("grid mean radius must be positive");
    std::vector<double> a(modes, 0.0), b(modes, 0.0);
    for (int k = 1; k <= modes; ++k) {
        double ca = 0.0, cb = 0.0;
        for (int i = 0; i < m; ++i) {
            const double th = kTwoPi * i / m;
            ca += values[i] * std::cos(k * th);
            cb += values[i] * std::sin(k * th);
        }
        a[k - 1] = 2.0 * ca / (m * mean);
        b[k - 1] = 2.0 * cb / (m * mean);
    }
    return FourierBoundary(mean, std::move(a), std::move(b));
}

double FourierBoundary::min_radius_factor() const {
    const int m = std::max(256, 16 * modes());
    double lo = 1.0;
    for (int i = 0; i < m; ++i) {
        lo = std::min(lo, 1.0 + perturbation(kTwoPi * i / m));
    }
    return lo;
}

FourierBoundary FourierBoundary::from_ellipse(double a_semi, double b_semi, int modes,
                                              double projection_tol,
                                              double* projection_error) {
    if (!(a_semi > 0.0) || !(b_semi > 0.0)) {
        throw std::invalid_argument("ellipse semi-axes must be positive");
    }
    const int fine = std::max(4096, 8 * modes);
    std::vector<double> r(fine);
    double mean = 0.0;
    for (int i = 0; i < fine; ++i) {
        const double th = kTwoPi * i / fine;
        const double c = std::cos(th), s = std::sin(th);
        r[i] = a_semi * b_semi / std::hypot(b_semi * c, a_semi * s);
        mean += r[i];
    }
    mean /= fine;
    std::vector<double> a(modes, 0.0), b(modes, 0.0);
    for (int k = 1; k <= modes; ++k) {
        if (k % 2 != 0) continue;  // odd modes vanish by symmetry
        double ca = 0.0;
        for (int i = 0; i < fine; ++i) ca += r[i] * std::cos(k * kTwoPi * i / fine);
        a[k - 1] = 2.0 * ca / (fine * mean);
    }
    FourierBoundary out(mean, std::move(a), std::move(b));
    double err = 0.0;
    for (int i = 0; i < fine; ++i) {
        err = std::max(err, std::abs(r[i] - out.radius(kTwoPi * i / fine)));
    }
    if (projection_error) *projection_error = err;
    if (err > projection_tol) {
        throw std::invalid_argument("mode count too small to resolve the ellipse: projection error " +
                                    std::to_string(err));
    }
    return out;
}

void perturbation_on_grid(const FourierBoundary& b, int m,
                          std::vector<double>& values,
                          std::vector<double>& derivatives, double theta0) {
    values.assign(m, 0.0);
    derivatives.assign(m, 0.0);
    const auto& ac = b.cos_coeffs();
    const auto& bc = b.sin_coeffs();
    for (int i = 0; i < m; ++i) {
        const double th = theta0 + kTwoPi * i / m;
        const double c1 = std::cos(th), s1 = std::sin(th);
        double ck = 1.0, sk = 0.0, v = 0.0, vp = 0.0;
        for (std::size_t k = 0; k < ac.size(); ++k) {
            const double cn = ck * c1 - sk * s1;
            const double sn = sk * c1 + ck * s1;
            ck = cn;
            sk = sn;
            const double kk = static_cast<double>(k + 1);
            v += ac[k] * ck + bc[k] * sk;
            vp += -kk * ac[k] * sk + kk * bc[k] * ck;
        }
        values[i] = v;
        derivatives[i] = vp;
    }
}

}  // namespace vstate
