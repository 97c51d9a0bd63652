"""Archetype and archetypoid analysis for multivariate and functional data.

The central objects are extremal profiles: archetypes (convex combinations
of observations that the data itself is approximated by) and archetypoids
(the same idea with the profiles constrained to be actual observations).
Functional variants operate on basis-expansion coefficients under the
basis Gram metric, so any basis works, not just orthonormal ones.
"""

from ._kernels import NUMBA_ENABLED
from .archetypes import (
    AAModel,
    ElbowReport,
    ElbowRow,
    FitOptions,
    elbow_scan,
    fit_archetypes,
    rss,
    standardize_columns,
)
from .archetypoids import (
    ADAModel,
    CAND_ALPHA,
    CAND_BETA,
    CAND_NS,
    build_candidates,
    fit_archetypoids,
    swap_optimize,
)
from .basis import (
    BasisSpec,
    GramMatrix,
    SampledCurve,
    design_matrix,
    evaluate_basis,
    evaluate_curve,
    fit_coefficients,
    gram_matrix,
)
from .errors import (
    AlignmentError,
    ArchefitError,
    ArgumentError,
    DataError,
    DegenerateVarianceError,
    DomainError,
    IterationLimitError,
    NotPositiveDefiniteError,
    UnderdeterminedFitError,
)
from .functional import (
    FunctionalAAModel,
    FunctionalDataset,
    KScanRow,
    MultivariateFunctionalDataset,
    faa,
    fada,
    fit_dataset,
    k_scan_archetypoids,
    stack_multivariate,
    standardize,
)
from .linalg import SolverOptions, cholesky_spd, nnls_brute_force, nnls_solve, simplex_ls

__version__ = "0.1.0"

__all__ = [
    "AAModel",
    "ADAModel",
    "AlignmentError",
    "ArchefitError",
    "ArgumentError",
    "BasisSpec",
    "CAND_ALPHA",
    "CAND_BETA",
    "CAND_NS",
    "DataError",
    "DegenerateVarianceError",
    "DomainError",
    "ElbowReport",
    "ElbowRow",
    "FitOptions",
    "FunctionalAAModel",
    "FunctionalDataset",
    "GramMatrix",
    "IterationLimitError",
    "KScanRow",
    "MultivariateFunctionalDataset",
    "NotPositiveDefiniteError",
    "NUMBA_ENABLED",
    "SampledCurve",
    "SolverOptions",
    "UnderdeterminedFitError",
    "build_candidates",
    "cholesky_spd",
    "design_matrix",
    "elbow_scan",
    "evaluate_basis",
    "evaluate_curve",
    "faa",
    "fada",
    "fit_archetypes",
    "fit_archetypoids",
    "fit_coefficients",
    "fit_dataset",
    "gram_matrix",
    "k_scan_archetypoids",
    "nnls_brute_force",
    "nnls_solve",
    "rss",
    "simplex_ls",
    "stack_multivariate",
    "standardize",
    "standardize_columns",
]
