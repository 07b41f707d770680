"""Amalgam norms and Fourier integrability of piecewise-linear functions.

Functions on the half-line are continuous piecewise-linear models (jumps only
at the support edges); everything that can be computed in closed form is.
"""

from .amalgam import (
    EMBEDDING_CONSTANT,
    CoefficientSequence,
    NormReport,
    block_integral,
    embedding_ratio,
    function_amalgam_norm,
    rescaled_norm_identity_defect,
    scale_norm,
    sequence_amalgam_norm,
    wiener_amalgam_norm,
    windowed_amalgam_sum,
)
from .asymptotics import (
    DecompositionSample,
    RemainderEstimate,
    bale_check,
    decompose,
    decompose_grid,
    fubini_identity_defect,
    fubini_sides,
    main_term,
    remainder,
    remainder_l1,
    tail_reduction_defect,
    tail_reduction_sum,
)
from .errors import (
    AmalgamError,
    ConvergenceError,
    DomainError,
    EmptySequenceError,
    LengthMismatchError,
    ModelError,
    NegativeBreakpointError,
    NonMonotoneBreakpointsError,
    PreconditionError,
)
from .model import (
    FunctionModel,
    PiecewiseConstant,
    PiecewiseLinear,
    abs_integral,
    derivative,
    dilate,
    make_piecewise_linear,
    sample_decaying,
    total_variation,
)
from .series import (
    SeriesKind,
    condsin_equivalence_ratio,
    condsin_sum,
    cosine_integrability_check,
    difference_sequence,
    interpolate,
    partial_sum,
    partial_sums,
    sine_asymptotic_check,
    trigub_discrepancy,
)
from .transforms import (
    COSINE,
    SINE,
    TransformKind,
    dirichlet_integral,
    fourier_pair,
    fourier_transform,
    hilbert_l1_truncated,
    hilbert_transform,
    ht_comparison,
    t_transform,
    t_transform_l1_norm,
)
from .verify import VerificationReport, run_suites

__version__ = "0.1.0"
