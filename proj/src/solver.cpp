#include "vstate/solver.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "vstate/linearization.hpp"

namespace vstate {

namespace {

Eigen::VectorXd pack_residual(const ResidualField& r, SolveConfig::Symmetry sym,
                              bool fix_rotation, int rotation_mode) {
    const int n = static_cast<int>(r.sine_coeffs.size());
    if (sym == SolveConfig::Symmetry::even_cosine) {
        return Eigen::Map<const Eigen::VectorXd>(r.sine_coeffs.data(), n);
    }
    const int rows = fix_rotation ? 2 * n - 1 : 2 * n;
    Eigen::VectorXd out(rows);
    int at = 0;
    for (int k = 0; k < n; ++k) out[at++] = r.sine_coeffs[k];
    for (int k = 0; k < n; ++k) {
        if (fix_rotation && k == rotation_mode - 1) continue;
        out[at++] = r.cosine_coeffs[k];
    }
    return out;
}

struct UnknownMap {
    // Each unknown indexes into the cos (kind 0) or sin (kind 1) arrays.
    std::vector<std::pair<int, int>> slots;
};

UnknownMap build_unknowns(int n, SolveConfig::Symmetry sym, bool fix_rotation,
                          int rotation_mode) {
    UnknownMap map;
    for (int k = 0; k < n; ++k) map.slots.push_back({0, k});
    if (sym == SolveConfig::Symmetry::full) {
        for (int k = 0; k < n; ++k) {
            if (fix_rotation && k == rotation_mode - 1) continue;
            map.slots.push_back({1, k});
        }
    }
    return map;
}

double quadratic_ratio_from(const std::vector<double>& hist) {
    double ratio = 0.0;
    for (std::size_t i = 1; i < hist.size(); ++i) {
        const double prev = hist[i - 1];
        if (prev > 1e-14 && prev < 1e-2) {
            ratio = std::max(ratio, hist[i] / (prev * prev));
        }
    }
    return ratio;
}

}  // namespace

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("VSTATE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

NewtonResult newton_solve(const PatchState& initial, const SolveConfig& cfg) {
    if (!(cfg.damping > 0.0) || cfg.damping > 1.0) {
        throw std::invalid_argument("damping must lie in (0, 1]");
    }
    const FourierBoundary b0 = initial.boundary.normalized_mean();
    const int n = b0.modes();
    std::vector<double> a = b0.cos_coeffs();
    std::vector<double> b = b0.sin_coeffs();
    if (cfg.symmetry == SolveConfig::Symmetry::even_cosine) {
        for (double& s : b) {
            if (std::abs(s) > 1e-12) {
                throw std::invalid_argument("even_cosine symmetry requires zero sine coefficients");
            }
            s = 0.0;
        }
    }
    const UnknownMap map = build_unknowns(n, cfg.symmetry, cfg.fix_rotation, cfg.rotation_mode);
    if (cfg.symmetry == SolveConfig::Symmetry::full && cfg.fix_rotation) {
        if (cfg.rotation_mode < 1 || cfg.rotation_mode > n) {
            throw std::invalid_argument("rotation_mode out of range");
        }
        b[cfg.rotation_mode - 1] = 0.0;
    }

    auto eval = [&](const std::vector<double>& ac, const std::vector<double>& bc) {
        return eval_contour_residual({FourierBoundary(1.0, ac, bc), initial.omega},
                                     cfg.quadrature);
    };

    NewtonResult out;
    ResidualField field = eval(a, b);
    out.residual_history.push_back(field.sup_norm);
    const int cols = static_cast<int>(map.slots.size());
    const double h = cfg.quadrature.fd_step;

    for (int it = 0; it < cfg.max_iters; ++it) {
        if (field.sup_norm <= cfg.newton_tol) {
            out.status = NewtonResult::Status::converged;
            break;
        }
        Eigen::VectorXd rhs =
            pack_residual(field, cfg.symmetry, cfg.fix_rotation, cfg.rotation_mode);
        Eigen::MatrixXd jac(rhs.size(), cols);
        for (int c = 0; c < cols; ++c) {
            auto [kind, k] = map.slots[c];
            double& slot = kind == 0 ? a[k] : b[k];
            const double saved = slot;
            slot = saved + h;
            const Eigen::VectorXd plus =
                pack_residual(eval(a, b), cfg.symmetry, cfg.fix_rotation, cfg.rotation_mode);
            slot = saved - h;
            const Eigen::VectorXd minus =
                pack_residual(eval(a, b), cfg.symmetry, cfg.fix_rotation, cfg.rotation_mode);
            slot = saved;
            jac.col(c) = (plus - minus) / (2.0 * h);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        lu.setThreshold(1e-10);
        if (!lu.isInvertible()) {
            out.status = NewtonResult::Status::singular_jacobian;
            break;
        }
        const Eigen::VectorXd step = lu.solve(rhs);
        // Damped update with simple backtracking when the residual grows or
        // the step leaves the star-shaped region.
        double scale = cfg.damping;
        std::vector<double> na = a, nb = b;
        ResidualField next;
        bool accepted = false;
        for (int bt = 0; bt < 8; ++bt) {
            for (int c = 0; c < cols; ++c) {
                auto [kind, k] = map.slots[c];
                (kind == 0 ? na[k] : nb[k]) =
                    (kind == 0 ? a[k] : b[k]) - scale * step[c];
            }
            try {
                next = eval(na, nb);
            } catch (const std::exception&) {
                scale *= 0.5;
                continue;
            }
            if (next.sup_norm < field.sup_norm || bt >= 4) {
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) break;  // reported as max_iterations with the history so far
        a = na;
        b = nb;
        field = next;
        out.residual_history.push_back(field.sup_norm);
        ++out.iterations;
    }
    if (out.status != NewtonResult::Status::singular_jacobian &&
        field.sup_norm <= cfg.newton_tol) {
        out.status = NewtonResult::Status::converged;
    }
    out.state = PatchState{FourierBoundary(1.0, a, b), initial.omega};
    out.quadratic_ratio = quadratic_ratio_from(out.residual_history);
    return out;
}

BranchRecord amplitude_constrained_solve(int m, double c, double omega_guess,
                                         const SolveConfig& cfg, int modes) {
    if (m < 2) throw std::invalid_argument("amplitude mode must be >= 2");
    if (modes < m) throw std::invalid_argument("modes must be at least m");
    if (std::abs(c) > 0.3) {
        throw std::invalid_argument("amplitude outside the resolvable range |c| <= 0.3");
    }
    BranchRecord rec;
    rec.amplitude = c;
    if (std::abs(c) < 1e-14) {
        rec.omega = omega_guess;
        rec.boundary = FourierBoundary::disk(1.0, modes);
        rec.residual = eval_contour_residual({rec.boundary, omega_guess}, cfg.quadrature).sup_norm;
        rec.classification = Classification::disk;
        return rec;
    }

    const int n = modes;
    std::vector<double> a(n, 0.0);
    const std::vector<double> zeros(n, 0.0);
    a[m - 1] = c;
    double omega = omega_guess;
    const double h = cfg.quadrature.fd_step;

    auto eval_sines = [&](const std::vector<double>& ac, double om) {
        const ResidualField f = eval_contour_residual({FourierBoundary(1.0, ac, zeros), om},
                                                      cfg.quadrature);
        return std::pair<Eigen::VectorXd, double>(
            Eigen::Map<const Eigen::VectorXd>(f.sine_coeffs.data(), n), f.sup_norm);
    };

    std::vector<int> free_modes;
    for (int k = 0; k < n; ++k) {
        if (k != m - 1) free_modes.push_back(k);
    }

    auto [rhs, sup] = eval_sines(a, omega);
    bool converged = sup <= cfg.newton_tol;
    for (int it = 0; it < cfg.max_iters && !converged; ++it) {
        Eigen::MatrixXd jac(n, n);
        for (std::size_t idx = 0; idx < free_modes.size(); ++idx) {
            const int k = free_modes[idx];
            const double saved = a[k];
            a[k] = saved + h;
            const Eigen::VectorXd plus = eval_sines(a, omega).first;
            a[k] = saved - h;
            const Eigen::VectorXd minus = eval_sines(a, omega).first;
            a[k] = saved;
            jac.col(idx) = (plus - minus) / (2.0 * h);
        }
        const double dom = 1e-6;
        jac.col(n - 1) =
            (eval_sines(a, omega + dom).first - eval_sines(a, omega - dom).first) / (2.0 * dom);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        lu.setThreshold(1e-10);
        if (!lu.isInvertible()) {
            throw std::runtime_error("rank-deficient amplitude-constrained system");
        }
        const Eigen::VectorXd step = lu.solve(rhs);
        for (std::size_t idx = 0; idx < free_modes.size(); ++idx) {
            a[free_modes[idx]] -= cfg.damping * step[idx];
        }
        omega -= cfg.damping * step[n - 1];
        std::tie(rhs, sup) = eval_sines(a, omega);
        converged = sup <= cfg.newton_tol;
    }
    if (!converged) {
        throw std::runtime_error("amplitude-constrained solve did not converge");
    }
    rec.omega = omega;
    rec.boundary = FourierBoundary(1.0, a, zeros);
    rec.residual = sup;
    const ClassifyResult cls =
        classify(rec.boundary, std::max(100.0 * cfg.newton_tol, 1e-9));
    rec.classification = cls.classification;
    rec.classification_residual = cls.residual;
    return rec;
}

std::vector<BranchRecord> continue_branch(int m, int steps, double ds,
                                          const SolveConfig& cfg, int modes) {
    if (m < 2) throw std::invalid_argument("branch mode must be >= 2");
    if (!(ds > 0.0)) throw std::invalid_argument("ds must be positive");
    const int n = modes;
    const double ds_min = ds / 64.0;
    const double h = cfg.quadrature.fd_step;
    const std::vector<double> zeros(n, 0.0);
    const double cls_tol = std::max(100.0 * cfg.newton_tol, 1e-9);

    // State vector z = (omega, a_1..a_N), even-cosine subspace.
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n + 1);
    z[0] = bifurcation_omega(m);
    Eigen::VectorXd tangent = Eigen::VectorXd::Zero(n + 1);
    tangent[m] = 1.0;

    auto eval_sines = [&](const Eigen::VectorXd& zz) {
        std::vector<double> a(zz.data() + 1, zz.data() + 1 + n);
        const ResidualField f =
            eval_contour_residual({FourierBoundary(1.0, a, zeros), zz[0]}, cfg.quadrature);
        return std::pair<Eigen::VectorXd, double>(
            Eigen::Map<const Eigen::VectorXd>(f.sine_coeffs.data(), n), f.sup_norm);
    };

    std::vector<BranchRecord> records;
    double arclength = 0.0;
    double step_size = ds;
    Eigen::VectorXd z_prev = z;

    for (int s = 0; s < steps;) {
        Eigen::VectorXd zc = z + step_size * tangent;
        bool ok = false;
        double sup = 0.0;
        for (int it = 0; it < cfg.max_iters; ++it) {
            auto [sines, sn] = eval_sines(zc);
            sup = sn;
            if (sup <= cfg.newton_tol) {
                ok = true;
                break;
            }
            Eigen::MatrixXd jac(n + 1, n + 1);
            Eigen::VectorXd rhs(n + 1);
            rhs.head(n) = sines;
            rhs[n] = tangent.dot(zc - z) - step_size;
            for (int cidx = 0; cidx <= n; ++cidx) {
                Eigen::VectorXd zp = zc, zm = zc;
                const double hh = cidx == 0 ? 1e-6 : h;
                zp[cidx] += hh;
                zm[cidx] -= hh;
                jac.col(cidx).head(n) = (eval_sines(zp).first - eval_sines(zm).first) / (2.0 * hh);
            }
            jac.row(n) = tangent.transpose();
            Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
            lu.setThreshold(1e-10);
            if (!lu.isInvertible()) break;
            zc -= lu.solve(rhs);
        }
        if (!ok) {
            step_size *= 0.5;
            if (step_size < ds_min) break;  // partial branch
            continue;
        }
        arclength += step_size;
        BranchRecord rec;
        rec.omega = zc[0];
        rec.amplitude = zc[m];
        rec.boundary = FourierBoundary(1.0, std::vector<double>(zc.data() + 1, zc.data() + 1 + n),
                                       zeros);
        rec.residual = sup;
        const ClassifyResult cls = classify(rec.boundary, cls_tol);
        rec.classification = cls.classification;
        rec.classification_residual = cls.residual;
        rec.arclength = arclength;
        records.push_back(std::move(rec));

        tangent = (zc - z).normalized();
        z_prev = z;
        z = zc;
        step_size = std::min(ds, 2.0 * step_size);
        ++s;
    }
    return records;
}

namespace {

struct TrialDraw {
    double omega = 0.0;
    FourierBoundary boundary;
    double sym_diff = 0.0;
};

TrialDraw draw_trial(double delta, std::uint64_t seed, int index, int modes,
                     double omega_center, int pin_mode) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    TrialDraw out;
    out.omega = omega_center + delta * (2.0 * uni(rng) - 1.0);
    std::vector<double> a(modes, 0.0), b(modes, 0.0);
    // Spectral decay k^-3; mode 1 left empty (centered initial data).
    for (int k = 2; k <= modes; ++k) {
        a[k - 1] = gauss(rng) / (static_cast<double>(k) * k * k);
        b[k - 1] = gauss(rng) / (static_cast<double>(k) * k * k);
    }
    const double target = delta * (0.2 + 0.8 * uni(rng));
    if (target <= 0.0) {
        out.boundary = FourierBoundary::disk(1.0, modes);
        return out;
    }
    // Align the pinned mode, then rescale onto the symmetric-difference target.
    const double ph = std::atan2(b[pin_mode - 1], a[pin_mode - 1]);
    FourierBoundary cur = FourierBoundary(1.0, a, b).rotated(-ph / pin_mode);
    const FourierBoundary disk = FourierBoundary::disk();
    for (int pass = 0; pass < 3; ++pass) {
        const double sd = symmetric_difference_area(cur, disk);
        if (sd < 1e-30) break;
        double scale = target / sd;
        std::vector<double> sa = cur.cos_coeffs(), sb = cur.sin_coeffs();
        for (auto& v : sa) v *= scale;
        for (auto& v : sb) v *= scale;
        // keep the boundary star-shaped if the draw is extreme
        for (int guard = 0; guard < 40; ++guard) {
            try {
                cur = FourierBoundary(1.0, sa, sb);
                break;
            } catch (const std::invalid_argument&) {
                for (auto& v : sa) v *= 0.5;
                for (auto& v : sb) v *= 0.5;
            }
        }
    }
    out.boundary = cur;
    out.sym_diff = symmetric_difference_area(cur, disk);
    return out;
}

}  // namespace

ScanReport rigidity_scan(double delta, int trials, std::uint64_t seed,
                         const SolveConfig& cfg, int modes, double omega_center,
                         int pin_mode) {
    if (delta > 0.05) throw std::invalid_argument("scan delta must be <= 0.05");
    if (delta < 0.0) throw std::invalid_argument("scan delta must be nonnegative");
    if (trials < 1) throw std::invalid_argument("scan needs at least one trial");

    ScanReport report;
    report.delta = delta;
    report.seed = seed;
    report.trials.resize(trials);

    SolveConfig trial_cfg = cfg;
    trial_cfg.symmetry = SolveConfig::Symmetry::full;
    trial_cfg.fix_rotation = true;
    trial_cfg.rotation_mode = pin_mode;

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= trials) return;
            ScanTrial& t = report.trials[i];
            t.index = i;
            const TrialDraw draw = draw_trial(delta, seed, i, modes, omega_center, pin_mode);
            t.omega = draw.omega;
            t.sym_diff_initial = draw.sym_diff;
            const NewtonResult res = newton_solve({draw.boundary, draw.omega}, trial_cfg);
            t.iterations = res.iterations;
            t.residual = res.residual_history.back();
            if (res.status != NewtonResult::Status::converged) {
                t.converged = false;
                continue;
            }
            t.converged = true;
            const ClassifyResult cls = classify(
                res.state.boundary, std::max(100.0 * trial_cfg.newton_tol, 1e-9));
            t.classification = cls.classification;
            t.fold = detect_fold(res.state.boundary, &t.fold_leakage);
            t.center_norm = center_of_vorticity(res.state.boundary).norm();
        }
    };

    const int workers = std::min(worker_count(), trials);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const ScanTrial& t : report.trials) {
        if (!t.converged) {
            ++report.inconclusive;
        } else if (t.classification == Classification::disk) {
            ++report.disks;
        } else if (t.classification == Classification::ellipse) {
            ++report.ellipses;
        } else {
            ++report.others;
        }
    }
    return report;
}

}  // namespace vstate
