"""Functional archetype and archetypoid analysis.

Curves are carried as coefficient rows over a basis.  The L2 residual of a
coefficient difference ``a`` is the quadratic form ``a' W a`` with ``W``
the basis Gram matrix, so the functional fits reduce exactly to the
multivariate ones under the ``W`` metric: one Cholesky factorisation up
front, no quadrature in the iteration.  Works for any basis, orthonormal
or not; for orthonormal bases ``W`` is the identity and the reduction is
the trivial one.

Multivariate functional data (several curves per individual) is handled by
concatenating coefficient blocks and using the block-diagonal Gram matrix,
which makes the components share mixture weights.
"""

from dataclasses import dataclass

import numpy as np

from .archetypes import FitOptions, fit_archetypes
from .archetypoids import fit_archetypoids
from .basis import BasisSpec, GramMatrix, SampledCurve, design_matrix, gram_matrix
from .errors import AlignmentError, ArgumentError, DataError, DegenerateVarianceError


@dataclass
class FunctionalDataset:
    """``n`` curves over a shared basis: one coefficient row per curve."""

    basis: BasisSpec
    coefficients: np.ndarray
    ids: list
    variable_name: str = "value"

    def __post_init__(self):
        C = np.asarray(self.coefficients, dtype=float)
        if C.ndim != 2:
            raise ArgumentError(f"coefficients must be 2-d, got shape {C.shape}")
        if C.shape[1] != self.basis.size:
            raise ArgumentError(
                f"coefficient columns ({C.shape[1]}) do not match basis size "
                f"({self.basis.size})"
            )
        if not np.isfinite(C).all():
            raise DataError("coefficients contain non-finite entries")
        self.ids = [str(i) for i in self.ids]
        if len(self.ids) != C.shape[0]:
            raise ArgumentError(
                f"{len(self.ids)} ids for {C.shape[0]} coefficient rows"
            )
        self.coefficients = C

    @property
    def n(self):
        return self.coefficients.shape[0]

    def curve_values(self, grid):
        """All curves evaluated on a grid: shape (n, len(grid))."""
        return self.coefficients @ design_matrix(self.basis, grid).T


@dataclass
class MultivariateFunctionalDataset:
    """Several functional variables observed on the same individuals."""

    components: list

    def __post_init__(self):
        if not self.components:
            raise ArgumentError("need at least one component")
        ids = self.components[0].ids
        bad = []
        for comp in self.components[1:]:
            if comp.ids != ids:
                bad.extend(sorted(set(comp.ids).symmetric_difference(ids)) or comp.ids)
        if bad:
            raise AlignmentError(
                f"components do not share ids; offending ids: {bad[:10]}", ids=bad
            )

    @property
    def ids(self):
        return self.components[0].ids

    @property
    def n(self):
        return self.components[0].n


@dataclass
class FunctionalAAModel:
    """Functional archetypes: the fitted weights plus archetype curves."""

    model: "AAModel"
    archetype_coefficients: np.ndarray
    dataset: object  # FunctionalDataset or MultivariateFunctionalDataset

    @property
    def k(self):
        return self.model.k

    @property
    def alpha(self):
        return self.model.alpha

    @property
    def beta(self):
        return self.model.beta

    @property
    def rss(self):
        return self.model.rss


def fit_dataset(curves, spec, variable_name="value"):
    """Fit basis coefficients to sampled curves, building a dataset.

    ``curves`` is a sequence of :class:`SampledCurve`; each is fitted by
    least squares on whatever sample points it has.
    """
    from .basis import fit_coefficients

    coeffs = np.empty((len(curves), spec.size))
    ids = []
    for i, curve in enumerate(curves):
        coeffs[i] = fit_coefficients(spec, curve)
        ids.append(curve.id or str(i))
    return FunctionalDataset(
        basis=spec, coefficients=coeffs, ids=ids, variable_name=variable_name
    )


def stack_multivariate(mfd):
    """Joined coefficient matrix and block-diagonal Gram matrix.

    Feeding the result to the multivariate fits realises the functional
    analysis with weights shared across components: the total squared norm
    is the sum of the per-component quadratic forms.
    """
    if isinstance(mfd, FunctionalDataset):
        return mfd.coefficients, gram_matrix(mfd.basis)
    comps = mfd.components
    if len(comps) == 1:
        return comps[0].coefficients, gram_matrix(comps[0].basis)
    coeffs = np.hstack([c.coefficients for c in comps])
    total = coeffs.shape[1]
    W = np.zeros((total, total))
    at = 0
    for c in comps:
        m = c.basis.size
        W[at:at + m, at:at + m] = gram_matrix(c.basis).values
        at += m
    return coeffs, GramMatrix(W, basis=None)


def component_slices(mfd):
    """(variable_name, basis, column slice) per component of the stack."""
    comps = mfd.components if isinstance(mfd, MultivariateFunctionalDataset) else [mfd]
    out = []
    at = 0
    for c in comps:
        out.append((c.variable_name, c.basis, slice(at, at + c.basis.size)))
        at += c.basis.size
    return out


def faa(fd, k, opts=None, solver=None, trace=None):
    """Functional archetype analysis.

    Accepts a :class:`FunctionalDataset` or a
    :class:`MultivariateFunctionalDataset`.  Mixture weights live on the
    individuals, so they are basis independent; the archetype curves are
    returned as coefficient rows over the same basis (stacked column
    blocks in the multivariate case).
    """
    coeffs, W = stack_multivariate(fd)
    model = fit_archetypes(coeffs, k, opts=opts, metric=W, solver=solver, trace=trace)
    return FunctionalAAModel(
        model=model,
        archetype_coefficients=model.beta @ coeffs,
        dataset=fd,
    )


def fada(fd, k, opts=None, solver=None):
    """Functional archetypoid analysis; returns the multivariate model.

    The ``indices`` of the result select the archetypoid curves; map them
    through ``fd.ids`` for labels.
    """
    coeffs, W = stack_multivariate(fd)
    return fit_archetypoids(coeffs, k, opts=opts, metric=W, solver=solver)


def standardize(fd, grid_size=201):
    """Pointwise standardisation of a functional dataset.

    Curves are evaluated on an equally spaced grid, centred and divided by
    the pointwise sample (n-1) standard deviation, and refitted to the
    basis.  Centring alone would be exact in coefficient space, but the
    division leaves the basis span, hence the refit.
    """
    if isinstance(fd, MultivariateFunctionalDataset):
        return MultivariateFunctionalDataset(
            [standardize(c, grid_size=grid_size) for c in fd.components]
        )
    if fd.n < 2:
        raise ArgumentError("standardisation needs at least two curves")
    if grid_size < fd.basis.size:
        raise ArgumentError(
            f"grid_size ({grid_size}) must be >= basis size ({fd.basis.size})"
        )
    a, b = fd.basis.domain
    grid = np.linspace(a, b, grid_size)
    design = design_matrix(fd.basis, grid)
    values = fd.coefficients @ design.T
    mean = values.mean(axis=0)
    sd = values.std(axis=0, ddof=1)
    tiny = np.argmin(sd)
    if sd[tiny] < 1e-12:
        raise DegenerateVarianceError(
            f"pointwise standard deviation ~ 0 at t = {grid[tiny]:g}",
            argument=float(grid[tiny]),
        )
    standardized = (values - mean) / sd
    coeffs, _, _, _ = np.linalg.lstsq(design, standardized.T, rcond=None)
    return FunctionalDataset(
        basis=fd.basis,
        coefficients=coeffs.T,
        ids=list(fd.ids),
        variable_name=fd.variable_name,
    )


@dataclass
class KScanRow:
    k: int
    indices: np.ndarray
    ids: list
    rss: float


def k_scan_archetypoids(fd, ks, opts=None, solver=None):
    """Archetypoid fits over a range of k, for nestedness tables.

    Nothing forces the solutions to be nested; the scan just reports them.
    """
    ks = [int(k) for k in ks]
    if any(k2 <= k1 for k1, k2 in zip(ks, ks[1:])):
        raise ArgumentError("ks must be strictly increasing")
    ids = fd.ids if hasattr(fd, "ids") else None
    rows = []
    for k in ks:
        model = fada(fd, k, opts=opts, solver=solver)
        labels = [ids[i] for i in model.indices] if ids else [str(i) for i in model.indices]
        rows.append(KScanRow(k=k, indices=model.indices, ids=labels, rss=model.rss))
    return rows
