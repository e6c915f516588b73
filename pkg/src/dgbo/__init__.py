"""Pseudospectral laboratory for dispersion-generalized Benjamin-Ono equations."""

__version__ = "0.1.0"

from .spectral import (
    Grid1D,
    SpaceTimeField,
    SpaceTimeGrid,
    SpectralField,
    apply_multiplier,
    dispersion_derivative,
    dispersion_symbol,
    forward_transform,
    forward_transform2,
    inverse_transform,
    inverse_transform2,
    make_grid,
    make_spacetime_grid,
    propagate,
)
from .norms import NormParams, fl_norm, mixed_norm, smoothing_norm, xsb_norm
from .dyadic import bump_psi, chi, project_frequency, project_modulation
from .resonance import (
    InteractionCase,
    h_function,
    jacobian_factor,
    modulation_identity_residual,
    resonance,
    resonance_bound_ratio,
)
from .bilinear import (
    DyadicBlock,
    certify_case,
    dyadic_bound,
    j_functional,
    make_test_function,
)
from .linear import local_smoothing_check, strichartz_ratio
from .solver import (
    SolveConfig,
    nonlinearity,
    nonlinear_estimate_ratio,
    picard_iterate,
    scaling_check,
    solve,
    step_ifrk4,
)
from .probes import illposedness_probe, threshold, threshold_sweep

__all__ = [
    "Grid1D", "SpaceTimeField", "SpaceTimeGrid", "SpectralField", "NormParams",
    "InteractionCase", "DyadicBlock", "SolveConfig", "apply_multiplier",
    "bump_psi", "certify_case", "chi", "dispersion_derivative",
    "dispersion_symbol", "dyadic_bound", "fl_norm", "forward_transform",
    "forward_transform2", "h_function", "illposedness_probe",
    "inverse_transform", "inverse_transform2", "j_functional",
    "jacobian_factor", "local_smoothing_check", "make_grid",
    "make_spacetime_grid", "make_test_function", "mixed_norm",
    "modulation_identity_residual", "nonlinear_estimate_ratio", "nonlinearity",
    "picard_iterate", "project_frequency", "project_modulation", "propagate",
    "resonance", "resonance_bound_ratio", "scaling_check", "smoothing_norm",
    "solve", "step_ifrk4", "strichartz_ratio", "threshold", "threshold_sweep",
    "xsb_norm",
]
