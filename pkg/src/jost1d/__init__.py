"""Jost solutions, scattering data, and squeezing limits for 1d Schrodinger operators.

The package computes Jost solutions of -y'' + V y = k^2 y for potentials with
a finite first moment, the derived scattering coefficients, zero-energy
resonance structure, and the small-eps behaviour of the windowed squeezed
family built from V: convergence either to decoupled half-line Dirichlet
operators or, at a resonance, to a one-parameter interface coupling.
"""

from .errors import (
    AnchorError,
    ExceptionalPointError,
    IntegrationError,
    NumericsError,
    QuadratureError,
    RatioInconsistencyError,
    SpecError,
)
from .jost import (
    GreenKernelSample,
    JostSolution,
    ScatteringData,
    check_wavenumber,
    jost_evaluator,
    jost_left,
    jost_right,
    jost_wronskian,
    scaled_scattering_identity,
    scattering,
    wronskian,
    wronskian_variation,
)
from .limits import (
    ConvergenceRecord,
    LimitOperator,
    classify_limit,
    convergence_table,
    dirichlet_decoupled,
    green_kernel_fn,
    interface,
    kernel_distance,
    limit_green_kernel,
    limit_scattering,
)
from .potential import (
    Potential,
    SplittingScale,
    TailData,
    exp_decay,
    fm_norm,
    load_potential,
    moments,
    piecewise_constant,
    piecewise_segments,
    potential_from_dict,
    scale,
    splitting_scale,
    square,
    tabulated,
    tail_weight_norm,
    tails,
    truncate,
    zero,
)
from .resonance import (
    CouplingRoot,
    CouplingSweep,
    DZeroDerivative,
    ResonanceReport,
    d_dot_zero,
    resonance_report,
    resonant_couplings,
)
from .scaled import (
    TruncatedScaledCoefficients,
    TruncatedScaledOperator,
    truncated_green_kernel,
    truncated_operator,
    truncated_scaled_jost,
    truncated_scaled_scattering,
)

__version__ = "0.1.0"

__all__ = [
    "AnchorError",
    "ConvergenceRecord",
    "CouplingRoot",
    "CouplingSweep",
    "DZeroDerivative",
    "ExceptionalPointError",
    "GreenKernelSample",
    "IntegrationError",
    "JostSolution",
    "LimitOperator",
    "NumericsError",
    "Potential",
    "QuadratureError",
    "RatioInconsistencyError",
    "ResonanceReport",
    "ScatteringData",
    "SpecError",
    "SplittingScale",
    "TailData",
    "TruncatedScaledCoefficients",
    "TruncatedScaledOperator",
    "check_wavenumber",
    "classify_limit",
    "convergence_table",
    "d_dot_zero",
    "dirichlet_decoupled",
    "exp_decay",
    "fm_norm",
    "green_kernel_fn",
    "interface",
    "jost_evaluator",
    "jost_left",
    "jost_right",
    "jost_wronskian",
    "kernel_distance",
    "limit_green_kernel",
    "limit_scattering",
    "load_potential",
    "moments",
    "piecewise_constant",
    "piecewise_segments",
    "potential_from_dict",
    "resonance_report",
    "resonant_couplings",
    "scale",
    "scaled_scattering_identity",
    "scattering",
    "splitting_scale",
    "square",
    "tabulated",
    "tail_weight_norm",
    "tails",
    "truncate",
    "truncated_green_kernel",
    "truncated_operator",
    "truncated_scaled_jost",
    "truncated_scaled_scattering",
    "wronskian",
    "wronskian_variation",
    "zero",
]
