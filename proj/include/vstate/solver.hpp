#pragma once

#include <cstdint>
#include <vector>

#include "vstate/contour.hpp"
#include "vstate/fourier_boundary.hpp"
#include "vstate/geometry.hpp"

namespace vstate {

struct SolveConfig {
    double newton_tol = 1e-11;  // residual sup-norm target
    int max_iters = 30;
    enum class Symmetry { full, even_cosine };
    Symmetry symmetry = Symmetry::full;
    /// Pin the sine part of `rotation_mode` to zero and drop the matching
    /// cosine equation, removing the rotational neutral direction.
    bool fix_rotation = true;
    int rotation_mode = 2;
    double damping = 1.0;  // in (0, 1]
    QuadratureConfig quadrature = {};
};

struct NewtonResult {
    PatchState state;
    enum class Status { converged, max_iterations, singular_jacobian };
    Status status = Status::max_iterations;
    std::vector<double> residual_history;  // sup norms, including the final one
    int iterations = 0;
    /// max over the tail of r_{n+1} / r_n^2, logged for the convergence check.
    double quadratic_ratio = 0.0;
};

/// One continuation point.
struct BranchRecord {
    double omega = 0.0;
    double amplitude = 0.0;  // projection of V onto cos(m theta)
    FourierBoundary boundary;
    double residual = 0.0;
    Classification classification = Classification::other;
    double classification_residual = 0.0;
    double arclength = 0.0;
};

/// Newton iteration for F(Omega, V) = 0 at fixed Omega.  The boundary is
/// normalized to mean radius 1 on entry.  Status `singular_jacobian` signals
/// a rank-deficient step (e.g. at a bifurcation point); use the amplitude
/// constrained solve there.
NewtonResult newton_solve(const PatchState& initial, const SolveConfig& cfg = {});

/// Lyapunov-Schmidt style solve: pin the cos(m theta) projection to c, free
/// Omega, solve the even-cosine system.  c = 0 returns the disk at
/// omega_guess (the trivial family is stationary in Omega).
BranchRecord amplitude_constrained_solve(int m, double c, double omega_guess,
                                         const SolveConfig& cfg = {}, int modes = 64);

/// Pseudo-arclength continuation of the mode-m branch from its bifurcation
/// point.  Secant-tangent predictor, Newton corrector on the bordered system;
/// the step is halved on corrector failure and the partial branch returned
/// once it falls below ds/64.
std::vector<BranchRecord> continue_branch(int m, int steps, double ds,
                                          const SolveConfig& cfg = {}, int modes = 64);

struct ScanTrial {
    int index = 0;
    double omega = 0.0;
    double sym_diff_initial = 0.0;
    bool converged = false;
    Classification classification = Classification::other;
    int fold = 0;
    double fold_leakage = 0.0;
    double residual = 0.0;
    double center_norm = 0.0;
    int iterations = 0;
};

struct ScanReport {
    double delta = 0.0;
    std::uint64_t seed = 0;
    int disks = 0;
    int ellipses = 0;
    int others = 0;
    int inconclusive = 0;
    std::vector<ScanTrial> trials;
};

/// Empirical rigidity check: seeded random near-disk initial data with
/// |Omega - omega_center| <= delta and symmetric difference to the unit disk
/// <= delta, solved in the full space with rotation pinned on `pin_mode`.
/// Trials run concurrently (worker count capped by VSTATE_THREADS) with
/// per-trial RNG streams derived from (seed, index).
ScanReport rigidity_scan(double delta, int trials, std::uint64_t seed,
                         const SolveConfig& cfg = {}, int modes = 32,
                         double omega_center = 0.25, int pin_mode = 2);

/// Worker-pool size: min(VSTATE_THREADS, hardware concurrency), at least 1.
int worker_count();

}  // namespace vstate
