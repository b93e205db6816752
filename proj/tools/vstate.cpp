// vstate: solve / continue / spectrum / verify / report / scan front end.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "vstate/contour.hpp"
#include "vstate/fourier_boundary.hpp"
#include "vstate/geometry.hpp"
#include "vstate/io.hpp"
#include "vstate/linearization.hpp"
#include "vstate/solver.hpp"
#include "vstate/stream_field.hpp"

namespace {

using namespace vstate;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct CommonOut {
    std::string out;
    bool plot_data = false;
};

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

void finish_manifest(RunManifest& m, const std::vector<std::string>& outputs) {
    m.finished_at = utc_timestamp();
    for (const auto& p : outputs) m.outputs[p] = file_digest(p);
    if (!outputs.empty()) write_manifest(manifest_path(outputs.front()), m);
}

void write_boundary_samples(const std::string& path, const FourierBoundary& b, int n = 512) {
    std::ofstream out(path);
    out << "theta,R\n";
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n;
        out << format_double(th) << "," << format_double(b.radius(th)) << "\n";
    }
}

FourierBoundary parse_init(const std::string& spec, int modes, double* file_omega,
                           bool* from_file, std::string* input_path) {
    *from_file = false;
    if (spec == "disk") return FourierBoundary::disk(1.0, modes);
    if (spec.rfind("ellipse:", 0) == 0) {
        const std::string rest = spec.substr(8);
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("--init ellipse expects ellipse:a,b");
        }
        const double a = std::stod(rest.substr(0, comma));
        const double b = std::stod(rest.substr(comma + 1));
        return FourierBoundary::from_ellipse(a, b, modes).resized(modes);
    }
    const PatchState p = read_patch_file(spec);
    *from_file = true;
    *file_omega = p.omega;
    *input_path = spec;
    return p.boundary.resized(std::max(modes, p.boundary.modes()));
}

void apply_perturbations(std::vector<double>& a, std::vector<double>& b,
                         const std::vector<std::string>& specs) {
    for (const std::string& s : specs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos || colon < 4) {
            throw std::invalid_argument("--perturb expects cosK:amp or sinK:amp, got " + s);
        }
        const std::string head = s.substr(0, 3);
        const int k = std::stoi(s.substr(3, colon - 3));
        const double amp = std::stod(s.substr(colon + 1));
        if (k < 1 || k > static_cast<int>(a.size())) {
            throw std::invalid_argument("--perturb mode out of range: " + s);
        }
        if (head == "cos") {
            a[k - 1] += amp;
        } else if (head == "sin") {
            b[k - 1] += amp;
        } else {
            throw std::invalid_argument("--perturb expects cosK:amp or sinK:amp, got " + s);
        }
    }
}

int run_solve(double omega, bool omega_given, const std::string& init,
              const std::vector<std::string>& perturb, int modes, double tol,
              int max_iters, const std::string& symmetry, int pin_mode, int quad_mult,
              const CommonOut& io_opts) {
    RunManifest man;
    man.command = "solve";
    man.started_at = utc_timestamp();
    man.parameters = {{"omega", omega},       {"init", init},
                      {"perturb", perturb},   {"modes", modes},
                      {"tol", tol},           {"max_iters", max_iters},
                      {"symmetry", symmetry}, {"pin_mode", pin_mode},
                      {"quad_mult", quad_mult}};

    double file_omega = 0.0;
    bool from_file = false;
    std::string input_path;
    FourierBoundary init_b = parse_init(init, modes, &file_omega, &from_file, &input_path);
    if (from_file) man.inputs[input_path] = file_digest(input_path);
    if (!omega_given) {
        if (!from_file) throw std::invalid_argument("--omega is required unless --init is a file");
        omega = file_omega;
        man.parameters["omega"] = omega;
    }

    std::vector<double> a = init_b.cos_coeffs(), b = init_b.sin_coeffs();
    apply_perturbations(a, b, perturb);
    PatchState initial{FourierBoundary(init_b.mean_radius(), a, b).normalized_mean(), omega};

    SolveConfig cfg;
    cfg.newton_tol = tol;
    cfg.max_iters = max_iters;
    cfg.symmetry = symmetry == "even" || symmetry == "even_cosine"
                       ? SolveConfig::Symmetry::even_cosine
                       : SolveConfig::Symmetry::full;
    cfg.fix_rotation = pin_mode > 0;
    cfg.rotation_mode = pin_mode > 0 ? pin_mode : 2;
    cfg.quadrature.nodes = quad_mult * (2 * modes + 1);

    const NewtonResult res = newton_solve(initial, cfg);
    man.parameters["residual_history"] = res.residual_history;
    if (res.status != NewtonResult::Status::converged) {
        std::cerr << "solve did not converge ("
                  << (res.status == NewtonResult::Status::singular_jacobian
                          ? "singular Jacobian; try an amplitude-constrained solve near a "
                            "bifurcation point"
                          : "max iterations reached")
                  << ")\nresidual history:";
        for (double r : res.residual_history) std::cerr << " " << format_double(r);
        std::cerr << "\n";
        return kExitNumerical;
    }
    write_patch_file(io_opts.out, res.state);
    std::vector<std::string> outputs{io_opts.out};
    if (io_opts.plot_data) {
        const std::string samples = io_opts.out + ".boundary.csv";
        write_boundary_samples(samples, res.state.boundary);
        outputs.push_back(samples);
    }
    finish_manifest(man, outputs);
    std::cout << "converged in " << res.iterations
              << " iterations, residual " << format_double(res.residual_history.back())
              << "; wrote " << io_opts.out << "\n";
    return kExitOk;
}

int run_continue(int mode, int steps, double ds, int modes, double tol, int quad_mult,
                 const CommonOut& io_opts) {
    RunManifest man;
    man.command = "continue";
    man.started_at = utc_timestamp();
    man.parameters = {{"mode", mode}, {"steps", steps},         {"ds", ds},
                      {"modes", modes}, {"tol", tol}, {"quad_mult", quad_mult}};
    SolveConfig cfg;
    cfg.newton_tol = tol;
    cfg.quadrature.nodes = quad_mult * (2 * modes + 1);
    const std::vector<BranchRecord> branch = continue_branch(mode, steps, ds, cfg, modes);
    if (branch.empty()) {
        std::cerr << "continuation produced no converged records\n";
        return kExitNumerical;
    }
    std::ofstream out(io_opts.out);
    out << "step,arclength,omega,amplitude,residual,classification\n";
    for (std::size_t i = 0; i < branch.size(); ++i) {
        const BranchRecord& r = branch[i];
        out << i << "," << format_double(r.arclength) << "," << format_double(r.omega) << ","
            << format_double(r.amplitude) << "," << format_double(r.residual) << ","
            << to_string(r.classification) << "\n";
    }
    out.close();
    std::vector<std::string> outputs{io_opts.out};
    if (io_opts.plot_data) {
        const std::string samples = io_opts.out + ".boundaries.csv";
        std::ofstream bs(samples);
        bs << "step,theta,R\n";
        for (std::size_t i = 0; i < branch.size(); ++i) {
            for (int j = 0; j < 256; ++j) {
                const double th = 2.0 * std::numbers::pi * j / 256;
                bs << i << "," << format_double(th) << ","
                   << format_double(branch[i].boundary.radius(th)) << "\n";
            }
        }
        outputs.push_back(samples);
    }
    finish_manifest(man, outputs);
    std::cout << "wrote " << branch.size() << " branch records to " << io_opts.out << "\n";
    return kExitOk;
}

int run_spectrum(double omega, int modes, const CommonOut& io_opts) {
    RunManifest man;
    man.command = "spectrum";
    man.started_at = utc_timestamp();
    man.parameters = {{"omega", omega}, {"modes", modes}};
    const SpectrumReport rep = compute_spectrum(omega, modes);
    std::ofstream out(io_opts.out);
    out << "k,mu_k,omega_root_k\n";
    for (int k = 1; k <= modes; ++k) {
        const double root = k >= 2 ? bifurcation_omega_root(k) : 0.0;
        out << k << "," << format_double(rep.multipliers[k - 1]) << "," << format_double(root)
            << "\n";
    }
    out.close();
    finish_manifest(man, {io_opts.out});
    std::cout << "wrote spectrum (" << modes << " modes) to " << io_opts.out << "\n";
    return kExitOk;
}

int run_verify(const std::string& input, int quad_mult, int stream_nodes,
               const CommonOut& io_opts) {
    RunManifest man;
    man.command = "verify";
    man.started_at = utc_timestamp();
    man.parameters = {{"input", input}, {"quad_mult", quad_mult},
                      {"stream_nodes", stream_nodes}};
    man.inputs[input] = file_digest(input);

    const PatchState p = read_patch_file(input);
    const PatchState normalized{p.boundary.normalized_mean(), p.omega};
    QuadratureConfig q;
    q.nodes = quad_mult * (2 * normalized.boundary.modes() + 1);
    const ResidualField res = eval_contour_residual(normalized, q);
    const double flat = boundary_flatness(normalized, stream_nodes);
    const GradientDeviation dev = gradient_deviation(normalized);
    const SteinerResult steiner =
        steiner_integral(normalized.boundary, Eigen::Vector2d::Zero());

    nlohmann::json rep{{"omega", p.omega},
                       {"modes", normalized.boundary.modes()},
                       {"residual_sup_norm", res.sup_norm},
                       {"boundary_flatness", flat},
                       {"gradient_deviation",
                        {{"grad_sup", dev.grad_sup},
                         {"psi_r_sup", dev.psi_r_sup},
                         {"psi_theta_sup", dev.psi_theta_sup}}},
                       {"steiner", {{"value", steiner.value}, {"ratio", steiner.ratio}}}};
    std::cout << rep.dump(2) << "\n";
    std::vector<std::string> outputs;
    if (!io_opts.out.empty()) {
        std::ofstream f(io_opts.out);
        f << rep.dump(2) << "\n";
        outputs.push_back(io_opts.out);
        if (io_opts.plot_data) {
            const std::string samples = io_opts.out + ".boundary.csv";
            write_boundary_samples(samples, normalized.boundary);
            outputs.push_back(samples);
        }
        finish_manifest(man, outputs);
    }
    return kExitOk;
}

int run_report(const std::string& input, double tol, const CommonOut& io_opts) {
    RunManifest man;
    man.command = "report";
    man.started_at = utc_timestamp();
    man.parameters = {{"input", input}, {"tol", tol}};
    man.inputs[input] = file_digest(input);
    const PatchState p = read_patch_file(input);
    const ShapeReport rep = shape_report(p.boundary, tol);
    const nlohmann::json j = shape_report_to_json(rep);
    std::cout << j.dump(2) << "\n";
    if (!io_opts.out.empty()) {
        std::ofstream f(io_opts.out);
        f << j.dump(2) << "\n";
        std::vector<std::string> outputs{io_opts.out};
        if (io_opts.plot_data) {
            const std::string samples = io_opts.out + ".boundary.csv";
            write_boundary_samples(samples, p.boundary);
            outputs.push_back(samples);
        }
        finish_manifest(man, outputs);
    }
    return kExitOk;
}

int run_scan(double delta, int trials, std::uint64_t seed, int modes, double omega_center,
             int pin_mode, double tol, const CommonOut& io_opts) {
    RunManifest man;
    man.command = "scan";
    man.started_at = utc_timestamp();
    man.seed = seed;
    man.seeded = true;
    man.parameters = {{"delta", delta},   {"trials", trials},
                      {"seed", seed},     {"modes", modes},
                      {"omega_center", omega_center}, {"pin_mode", pin_mode},
                      {"tol", tol}};
    SolveConfig cfg;
    cfg.newton_tol = tol;
    const ScanReport rep =
        rigidity_scan(delta, trials, seed, cfg, modes, omega_center, pin_mode);
    const nlohmann::json j = scan_report_to_json(rep);
    std::ofstream f(io_opts.out);
    f << j.dump(2) << "\n";
    f.close();
    finish_manifest(man, {io_opts.out});
    std::cout << "scan: " << rep.disks << " disk, " << rep.ellipses << " ellipse, "
              << rep.others << " other, " << rep.inconclusive << " inconclusive; wrote "
              << io_opts.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniformly rotating vortex patch (V-state) toolkit"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Newton solve at fixed omega");
    double omega = 0.0;
    std::string init = "disk";
    std::vector<std::string> perturb;
    int modes = 64;
    double tol = 1e-11;
    int max_iters = 30;
    std::string symmetry = "full";
    int pin_mode = 2;
    int quad_mult = 8;
    CommonOut solve_out{"patch.json", false};
    auto* omega_opt = solve->add_option("--omega", omega, "angular velocity");
    solve->add_option("--init", init, "disk | ellipse:a,b | patch file");
    solve->add_option("--perturb", perturb, "coefficient bumps, e.g. cos2:0.05");
    solve->add_option("--modes", modes, "Fourier truncation order");
    solve->add_option("--tol", tol, "residual sup-norm target");
    solve->add_option("--max-iters", max_iters, "Newton iteration cap");
    solve->add_option("--symmetry", symmetry, "full | even");
    solve->add_option("--pin-mode", pin_mode, "sine mode pinned against rotation (0 = free)");
    solve->add_option("--quad-mult", quad_mult, "inner nodes per collocation point");
    solve->add_option("--out", solve_out.out, "output patch file");
    solve->add_flag("--plot-data", solve_out.plot_data, "also write per-theta boundary samples");

    // continue
    auto* cont = app.add_subcommand("continue", "pseudo-arclength branch continuation");
    int cmode = 2, csteps = 30;
    double cds = 0.01;
    int cmodes = 64;
    double ctol = 1e-11;
    int cquad = 8;
    CommonOut cont_out{"branch.csv", false};
    cont->add_option("--mode", cmode, "bifurcation mode m")->required();
    cont->add_option("--steps", csteps, "continuation steps");
    cont->add_option("--ds", cds, "arclength step");
    cont->add_option("--modes", cmodes, "Fourier truncation order");
    cont->add_option("--tol", ctol, "corrector tolerance");
    cont->add_option("--quad-mult", cquad, "inner nodes per collocation point");
    cont->add_option("--out", cont_out.out, "output CSV");
    cont->add_flag("--plot-data", cont_out.plot_data, "also write per-record boundary samples");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "disk linearization multipliers");
    double somega = 0.25;
    int smodes = 16;
    CommonOut spec_out{"spectrum.csv", false};
    spec->add_option("--omega", somega, "angular velocity")->required();
    spec->add_option("--modes", smodes, "number of modes");
    spec->add_option("--out", spec_out.out, "output CSV");

    // verify
    auto* verify = app.add_subcommand("verify", "V-state certificate report");
    std::string vinput;
    int vquad = 8, vnodes = 0;
    CommonOut verify_out{"", false};
    verify->add_option("--input", vinput, "patch file")->required();
    verify->add_option("--quad-mult", vquad, "inner nodes per collocation point");
    verify->add_option("--stream-nodes", vnodes, "boundary nodes for the stream quadrature");
    verify->add_option("--out", verify_out.out, "write the report JSON here");
    verify->add_flag("--plot-data", verify_out.plot_data, "also write boundary samples");

    // report
    auto* report = app.add_subcommand("report", "shape report (area, center, classification)");
    std::string rinput;
    double rtol = 1e-7;
    CommonOut report_out{"", false};
    report->add_option("--input", rinput, "patch file")->required();
    report->add_option("--tol", rtol, "classification tolerance");
    report->add_option("--out", report_out.out, "write the report JSON here");
    report->add_flag("--plot-data", report_out.plot_data, "also write boundary samples");

    // scan
    auto* scan = app.add_subcommand("scan", "randomized rigidity scan near omega = 1/4");
    double sdelta = 0.01;
    int strials = 200;
    std::uint64_t sseed = 7;
    int scmodes = 32, spin = 2;
    double scomega = 0.25, sctol = 1e-11;
    CommonOut scan_out{"scan.json", false};
    scan->add_option("--delta", sdelta, "closeness parameter");
    scan->add_option("--trials", strials, "number of trials");
    scan->add_option("--seed", sseed, "RNG seed");
    scan->add_option("--modes", scmodes, "Fourier truncation order");
    scan->add_option("--omega-center", scomega, "center of the omega window");
    scan->add_option("--pin-mode", spin, "rotation pin mode");
    scan->add_option("--tol", sctol, "Newton tolerance");
    scan->add_option("--out", scan_out.out, "output JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) {
            return run_solve(omega, omega_opt->count() > 0, init, perturb, modes, tol,
                             max_iters, symmetry, pin_mode, quad_mult, solve_out);
        }
        if (cont->parsed()) {
            return run_continue(cmode, csteps, cds, cmodes, ctol, cquad, cont_out);
        }
        if (spec->parsed()) return run_spectrum(somega, smodes, spec_out);
        if (verify->parsed()) return run_verify(vinput, vquad, vnodes, verify_out);
        if (report->parsed()) return run_report(rinput, rtol, report_out);
        if (scan->parsed()) {
            return run_scan(sdelta, strials, sseed, scmodes, scomega, spin, sctol, scan_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SingularGeometryError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
