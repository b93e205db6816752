#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vstate/contour.hpp"
#include "vstate/fourier_boundary.hpp"
#include "vstate/geometry.hpp"
#include "vstate/io.hpp"
#include "vstate/linearization.hpp"
#include "vstate/solver.hpp"
#include "vstate/stream_field.hpp"

namespace py = pybind11;
using namespace vstate;

PYBIND11_MODULE(_core, m) {
    m.doc() = "uniformly rotating vortex patch (V-state) toolkit";
    m.attr("__version__") = kToolVersion;

    py::register_exception<SingularGeometryError>(m, "SingularGeometryError");

    py::class_<FourierBoundary>(m, "FourierBoundary")
        .def(py::init<>())
        .def(py::init<double, std::vector<double>, std::vector<double>>(),
             py::arg("mean_radius"), py::arg("cos_coeffs"), py::arg("sin_coeffs"))
        .def_static("disk", &FourierBoundary::disk, py::arg("radius") = 1.0,
                    py::arg("modes") = 0)
        .def_static(
            "from_ellipse",
            [](double a, double b, int modes, double tol) {
                double err = 0.0;
                FourierBoundary out = FourierBoundary::from_ellipse(a, b, modes, tol, &err);
                return py::make_tuple(out, err);
            },
            py::arg("a_semi"), py::arg("b_semi"), py::arg("modes"),
            py::arg("projection_tol") = 1e-9,
            "Returns (boundary, projection_error).")
        .def_property_readonly("modes", &FourierBoundary::modes)
        .def_property_readonly("mean_radius", &FourierBoundary::mean_radius)
        .def_property_readonly("cos_coeffs", &FourierBoundary::cos_coeffs)
        .def_property_readonly("sin_coeffs", &FourierBoundary::sin_coeffs)
        .def("radius", &FourierBoundary::radius, py::arg("theta"))
        .def("radius_derivative", &FourierBoundary::radius_derivative, py::arg("theta"))
        .def("perturbation", &FourierBoundary::perturbation, py::arg("theta"))
        .def("rotated", &FourierBoundary::rotated, py::arg("phi"))
        .def("normalized_mean", &FourierBoundary::normalized_mean)
        .def("resized", &FourierBoundary::resized, py::arg("modes"))
        .def("to_grid", &FourierBoundary::to_grid, py::arg("m"))
        .def_static("from_grid", &FourierBoundary::from_grid, py::arg("values"),
                    py::arg("modes"))
        .def("min_radius_factor", &FourierBoundary::min_radius_factor)
        .def("__repr__", [](const FourierBoundary& b) {
            return "<FourierBoundary modes=" + std::to_string(b.modes()) +
                   " mean_radius=" + format_double(b.mean_radius()) + ">";
        });

    py::class_<PatchState>(m, "PatchState")
        .def(py::init<>())
        .def(py::init([](FourierBoundary b, double omega) {
                 return PatchState{std::move(b), omega};
             }),
             py::arg("boundary"), py::arg("omega"))
        .def_readwrite("boundary", &PatchState::boundary)
        .def_readwrite("omega", &PatchState::omega);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("nodes", &QuadratureConfig::nodes)
        .def_readwrite("fd_step", &QuadratureConfig::fd_step)
        .def("resolve_nodes", &QuadratureConfig::resolve_nodes, py::arg("modes"));

    py::class_<ResidualField>(m, "ResidualField")
        .def_readonly("grid_values", &ResidualField::grid_values)
        .def_readonly("sine_coeffs", &ResidualField::sine_coeffs)
        .def_readonly("cosine_coeffs", &ResidualField::cosine_coeffs)
        .def_readonly("sup_norm", &ResidualField::sup_norm);

    m.def("eval_contour_residual", &eval_contour_residual, py::arg("patch"),
          py::arg("quadrature") = QuadratureConfig{});
    m.def("eval_F1", &eval_F1, py::arg("boundary"), py::arg("x"),
          py::arg("quadrature") = QuadratureConfig{});
    m.def("eval_F2", &eval_F2, py::arg("boundary"), py::arg("x"),
          py::arg("quadrature") = QuadratureConfig{});
    m.def("eval_F3", &eval_F3, py::arg("boundary"), py::arg("x"),
          py::arg("quadrature") = QuadratureConfig{});

    py::class_<SpectrumReport>(m, "SpectrumReport")
        .def_readonly("omega", &SpectrumReport::omega)
        .def_readonly("multipliers", &SpectrumReport::multipliers)
        .def_readonly("kernel_modes", &SpectrumReport::kernel_modes)
        .def_readonly("zero_tolerance", &SpectrumReport::zero_tolerance)
        .def_readonly("fitted_scale", &SpectrumReport::fitted_scale);

    m.def("disk_multiplier", &disk_multiplier, py::arg("omega"), py::arg("k"),
          py::arg("h") = 1e-5, py::arg("modes") = 0,
          py::arg("quadrature") = QuadratureConfig{});
    m.def("omega_cross_derivative", &omega_cross_derivative, py::arg("k"),
          py::arg("omega") = 0.25, py::arg("d_omega") = 1e-3, py::arg("h") = 1e-5,
          py::arg("quadrature") = QuadratureConfig{});
    m.def("bifurcation_omega", &bifurcation_omega, py::arg("m"));
    m.def("bifurcation_omega_root", &bifurcation_omega_root, py::arg("m"),
          py::arg("tol") = 1e-10);
    m.def("compute_spectrum", &compute_spectrum, py::arg("omega"), py::arg("modes"),
          py::arg("zero_tolerance") = 1e-8);

    m.def("psi0", &psi0, py::arg("omega"), py::arg("x"));

    py::class_<StreamSample>(m, "StreamSample")
        .def_readonly("position", &StreamSample::position)
        .def_readonly("psi", &StreamSample::psi)
        .def_readonly("psi_r", &StreamSample::psi_r)
        .def_readonly("psi_theta", &StreamSample::psi_theta);

    py::class_<StreamField>(m, "StreamField")
        .def(py::init<PatchState, int>(), py::arg("patch"), py::arg("boundary_nodes") = 0)
        .def("psi", &StreamField::psi, py::arg("x"))
        .def("newtonian_potential", &StreamField::newtonian_potential, py::arg("x"))
        .def("sample", &StreamField::sample, py::arg("x"))
        .def("sample_on_boundary", &StreamField::sample_on_boundary, py::arg("theta"))
        .def("boundary_flatness", &StreamField::boundary_flatness)
        .def_property_readonly("boundary_offset", &StreamField::boundary_offset);

    m.def("boundary_flatness",
          py::overload_cast<const PatchState&, int>(&boundary_flatness), py::arg("patch"),
          py::arg("nodes") = 0);

    py::class_<GradientDeviation>(m, "GradientDeviation")
        .def_readonly("grad_sup", &GradientDeviation::grad_sup)
        .def_readonly("psi_r_sup", &GradientDeviation::psi_r_sup)
        .def_readonly("psi_theta_sup", &GradientDeviation::psi_theta_sup);

    m.def("gradient_deviation", &gradient_deviation, py::arg("patch"),
          py::arg("radial_samples") = 12, py::arg("angular_samples") = 64,
          py::arg("clearance") = 0.02, py::arg("nodes") = 0);

    py::class_<SteinerResult>(m, "SteinerResult")
        .def_readonly("value", &SteinerResult::value)
        .def_readonly("ratio", &SteinerResult::ratio);

    m.def("steiner_integral", &steiner_integral, py::arg("boundary"), py::arg("x"),
          py::arg("directions") = 512);

    py::enum_<Classification>(m, "Classification")
        .value("disk", Classification::disk)
        .value("ellipse", Classification::ellipse)
        .value("other", Classification::other);

    py::class_<ClassifyResult>(m, "ClassifyResult")
        .def_readonly("classification", &ClassifyResult::classification)
        .def_readonly("residual", &ClassifyResult::residual)
        .def_readonly("fit_a", &ClassifyResult::fit_a)
        .def_readonly("fit_b", &ClassifyResult::fit_b);

    py::class_<ShapeReport>(m, "ShapeReport")
        .def_readonly("area", &ShapeReport::area)
        .def_readonly("center", &ShapeReport::center)
        .def_readonly("sym_diff_to_unit_disk", &ShapeReport::sym_diff_to_unit_disk)
        .def_readonly("radial_min", &ShapeReport::radial_min)
        .def_readonly("radial_max", &ShapeReport::radial_max)
        .def_readonly("classification", &ShapeReport::classification)
        .def_readonly("classification_residual", &ShapeReport::classification_residual);

    m.def("area", &area, py::arg("boundary"));
    m.def("center_of_vorticity", &center_of_vorticity, py::arg("boundary"));
    m.def("symmetric_difference_area", &symmetric_difference_area, py::arg("b1"),
          py::arg("b2"));
    m.def("radial_bounds", &radial_bounds, py::arg("boundary"));
    m.def("classify", &classify, py::arg("boundary"), py::arg("tol") = 1e-7);
    m.def(
        "detect_fold",
        [](const FourierBoundary& b) {
            double leak = 0.0;
            const int fold = detect_fold(b, &leak);
            return py::make_tuple(fold, leak);
        },
        py::arg("boundary"), "Returns (fold, leakage).");
    m.def("shape_report", &shape_report, py::arg("boundary"), py::arg("tol") = 1e-7);

    py::class_<SolveConfig> solve_cfg(m, "SolveConfig");
    py::enum_<SolveConfig::Symmetry>(solve_cfg, "Symmetry")
        .value("full", SolveConfig::Symmetry::full)
        .value("even_cosine", SolveConfig::Symmetry::even_cosine);
    solve_cfg.def(py::init<>())
        .def_readwrite("newton_tol", &SolveConfig::newton_tol)
        .def_readwrite("max_iters", &SolveConfig::max_iters)
        .def_readwrite("symmetry", &SolveConfig::symmetry)
        .def_readwrite("fix_rotation", &SolveConfig::fix_rotation)
        .def_readwrite("rotation_mode", &SolveConfig::rotation_mode)
        .def_readwrite("damping", &SolveConfig::damping)
        .def_readwrite("quadrature", &SolveConfig::quadrature);

    py::class_<NewtonResult> nres(m, "NewtonResult");
    py::enum_<NewtonResult::Status>(nres, "Status")
        .value("converged", NewtonResult::Status::converged)
        .value("max_iterations", NewtonResult::Status::max_iterations)
        .value("singular_jacobian", NewtonResult::Status::singular_jacobian);
    nres.def_readonly("state", &NewtonResult::state)
        .def_readonly("status", &NewtonResult::status)
        .def_readonly("residual_history", &NewtonResult::residual_history)
        .def_readonly("iterations", &NewtonResult::iterations)
        .def_readonly("quadratic_ratio", &NewtonResult::quadratic_ratio);

    py::class_<BranchRecord>(m, "BranchRecord")
        .def_readonly("omega", &BranchRecord::omega)
        .def_readonly("amplitude", &BranchRecord::amplitude)
        .def_readonly("boundary", &BranchRecord::boundary)
        .def_readonly("residual", &BranchRecord::residual)
        .def_readonly("classification", &BranchRecord::classification)
        .def_readonly("classification_residual", &BranchRecord::classification_residual)
        .def_readonly("arclength", &BranchRecord::arclength);

    m.def("newton_solve", &newton_solve, py::arg("initial"),
          py::arg("config") = SolveConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("amplitude_constrained_solve", &amplitude_constrained_solve, py::arg("m"),
          py::arg("c"), py::arg("omega_guess"), py::arg("config") = SolveConfig{},
          py::arg("modes") = 64, py::call_guard<py::gil_scoped_release>());
    m.def("continue_branch", &continue_branch, py::arg("m"), py::arg("steps"),
          py::arg("ds"), py::arg("config") = SolveConfig{}, py::arg("modes") = 64,
          py::call_guard<py::gil_scoped_release>());

    py::class_<ScanTrial>(m, "ScanTrial")
        .def_readonly("index", &ScanTrial::index)
        .def_readonly("omega", &ScanTrial::omega)
        .def_readonly("sym_diff_initial", &ScanTrial::sym_diff_initial)
        .def_readonly("converged", &ScanTrial::converged)
        .def_readonly("classification", &ScanTrial::classification)
        .def_readonly("fold", &ScanTrial::fold)
        .def_readonly("fold_leakage", &ScanTrial::fold_leakage)
        .def_readonly("residual", &ScanTrial::residual)
        .def_readonly("center_norm", &ScanTrial::center_norm)
        .def_readonly("iterations", &ScanTrial::iterations);

    py::class_<ScanReport>(m, "ScanReport")
        .def_readonly("delta", &ScanReport::delta)
        .def_readonly("seed", &ScanReport::seed)
        .def_readonly("disks", &ScanReport::disks)
        .def_readonly("ellipses", &ScanReport::ellipses)
        .def_readonly("others", &ScanReport::others)
        .def_readonly("inconclusive", &ScanReport::inconclusive)
        .def_readonly("trials", &ScanReport::trials);

    m.def("rigidity_scan", &rigidity_scan, py::arg("delta"), py::arg("trials"),
          py::arg("seed"), py::arg("config") = SolveConfig{}, py::arg("modes") = 32,
          py::arg("omega_center") = 0.25, py::arg("pin_mode") = 2,
          py::call_guard<py::gil_scoped_release>());
}
