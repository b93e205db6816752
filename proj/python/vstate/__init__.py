"""Uniformly rotating vortex patch (V-state) toolkit."""

from ._core import (  # noqa: F401
    BranchRecord,
    Classification,
    ClassifyResult,
    FourierBoundary,
    GradientDeviation,
    NewtonResult,
    PatchState,
    QuadratureConfig,
    ResidualField,
    ScanReport,
    ScanTrial,
    ShapeReport,
    SingularGeometryError,
    SolveConfig,
    SpectrumReport,
    SteinerResult,
    StreamField,
    StreamSample,
    __version__,
    amplitude_constrained_solve,
    area,
    bifurcation_omega,
    bifurcation_omega_root,
    boundary_flatness,
    center_of_vorticity,
    classify,
    compute_spectrum,
    continue_branch,
    detect_fold,
    disk_multiplier,
    eval_F1,
    eval_F2,
    eval_F3,
    eval_contour_residual,
    gradient_deviation,
    newton_solve,
    omega_cross_derivative,
    psi0,
    radial_bounds,
    rigidity_scan,
    shape_report,
    steiner_integral,
    symmetric_difference_area,
)
