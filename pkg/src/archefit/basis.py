"""Basis systems on an interval: evaluation, fitting and Gram matrices.

Two families are provided.  Fourier bases are scaled to be orthonormal on
the domain, so their Gram matrix is the identity by construction.  B-spline
bases use a clamped knot vector and the Cox-de Boor recursion; their Gram
matrix is assembled by per-span Gauss-Legendre quadrature, which is exact
for the piecewise-polynomial integrand.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ArgumentError, DataError, DomainError, UnderdeterminedFitError

FOURIER = "fourier"
BSPLINE = "bspline"


@dataclass(frozen=True)
class BasisSpec:
    """A basis system of ``size`` functions on ``domain = (a, b)``.

    Build instances through :meth:`fourier` or :meth:`bspline`.  For even
    Fourier sizes the basis is the constant, ``(size - 2) / 2`` full
    sine/cosine pairs, and one trailing sine of the next harmonic; odd
    sizes use full pairs only.  B-spline knot vectors are clamped: the
    boundary knots are repeated ``order`` times.
    """

    kind: str
    size: int
    domain: tuple[float, float]
    order: int | None = None
    knots: tuple[float, ...] | None = None  # full clamped vector
    period: float | None = None

    @staticmethod
    def fourier(size, domain, period=None):
        a, b = _check_domain(domain)
        if size < 1:
            raise ArgumentError("basis size must be >= 1")
        if period is None:
            period = b - a
        if period <= 0:
            raise ArgumentError("period must be positive")
        cycles = (b - a) / period
        if abs(cycles - round(cycles)) > 1e-9:
            raise ArgumentError(
                "domain length must be an integer number of periods for an "
                "orthonormal Fourier basis"
            )
        return BasisSpec(kind=FOURIER, size=int(size), domain=(a, b), period=float(period))

    @staticmethod
    def bspline(size, domain, order=4, interior_knots=None):
        a, b = _check_domain(domain)
        size = int(size)
        order = int(order)
        if order < 1:
            raise ArgumentError("order must be >= 1")
        if size < order:
            raise ArgumentError(f"need at least {order} basis functions for order {order}")
        n_interior = size - order
        if interior_knots is None:
            interior = np.linspace(a, b, n_interior + 2)[1:-1]
        else:
            interior = np.asarray(interior_knots, dtype=float)
            if interior.size != n_interior:
                raise ArgumentError(
                    f"expected {n_interior} interior knots for size {size}, "
                    f"order {order}; got {interior.size}"
                )
            if np.any(np.diff(interior) < 0):
                raise ArgumentError("interior knots must be nondecreasing")
            if interior.size and (interior[0] < a or interior[-1] > b):
                raise ArgumentError("interior knots must lie inside the domain")
        full = np.concatenate([np.full(order, a), interior, np.full(order, b)])
        return BasisSpec(
            kind=BSPLINE,
            size=size,
            domain=(a, b),
            order=order,
            knots=tuple(float(k) for k in full),
        )

    @property
    def degree(self):
        return self.order - 1

    def knot_array(self):
        return np.asarray(self.knots, dtype=float)

    def _check_args(self, ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        a, b = self.domain
        slack = 1e-12 * (b - a)
        if ts.size and (ts.min() < a - slack or ts.max() > b + slack):
            raise DomainError(
                f"argument outside basis domain [{a}, {b}]: "
                f"range [{ts.min()}, {ts.max()}]"
            )
        return np.clip(ts, a, b)


def _check_domain(domain):
    a, b = float(domain[0]), float(domain[1])
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise ArgumentError(f"domain must be a finite interval (a, b) with a < b, got {domain}")
    return a, b


@dataclass
class GramMatrix:
    """Pairwise L2 inner products of basis functions (symmetric PSD)."""

    values: np.ndarray
    basis: BasisSpec | None = None

    def __post_init__(self):
        V = np.asarray(self.values, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1]:
            raise ArgumentError(f"Gram matrix must be square, got shape {V.shape}")
        if np.abs(V - V.T).max() > 1e-10 * max(1.0, np.abs(V).max()):
            raise ArgumentError("Gram matrix must be symmetric")
        self.values = V

    @property
    def size(self):
        return self.values.shape[0]

    def is_identity(self):
        return np.array_equal(self.values, np.eye(self.size))


@dataclass
class SampledCurve:
    """One observed curve: values at strictly increasing argument points."""

    arguments: np.ndarray
    values: np.ndarray
    id: str = ""

    def __post_init__(self):
        self.arguments = np.asarray(self.arguments, dtype=float).ravel()
        self.values = np.asarray(self.values, dtype=float).ravel()
        if self.arguments.size != self.values.size:
            raise ArgumentError(
                f"curve {self.id!r}: {self.arguments.size} arguments but "
                f"{self.values.size} values"
            )
        if self.arguments.size == 0:
            raise DataError(f"curve {self.id!r} has no sample points")
        if np.any(np.diff(self.arguments) <= 0):
            raise ArgumentError(f"curve {self.id!r}: arguments must be strictly increasing")
        if not (np.isfinite(self.arguments).all() and np.isfinite(self.values).all()):
            raise DataError(f"curve {self.id!r} contains non-finite entries")

    def __len__(self):
        return self.arguments.size


def design_matrix(spec, ts):
    """Evaluate all basis functions on a grid: shape (len(ts), spec.size)."""
    ts = spec._check_args(ts)
    if spec.kind == BSPLINE:
        return _kernels.bspline_design(spec.knot_array(), spec.degree, ts, spec.size)
    return _fourier_design(spec, ts)


def _fourier_design(spec, ts):
    a, b = spec.domain
    length = b - a
    omega = 2.0 * np.pi / spec.period
    phase = omega * (ts - a)
    design = np.empty((ts.size, spec.size))
    design[:, 0] = 1.0 / np.sqrt(length)
    amp = np.sqrt(2.0 / length)
    for r in range(1, (spec.size + 1) // 2 + 1):
        si = 2 * r - 1
        co = 2 * r
        if si < spec.size:
            design[:, si] = amp * np.sin(r * phase)
        if co < spec.size:
            design[:, co] = amp * np.cos(r * phase)
    return design


def evaluate_basis(spec, t):
    """Vector of all basis function values at a single argument."""
    return design_matrix(spec, [t])[0]


def gauss_legendre_span(lo, hi, n_nodes):
    """Gauss-Legendre nodes and weights on the interval [lo, hi]."""
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def gram_matrix(spec):
    """Gram matrix of the basis.

    Fourier bases are orthonormal by construction, so the identity is
    returned analytically.  For B-splines of order ``r`` the integral over
    each knot span is computed with an ``r``-node Gauss-Legendre rule,
    exact for the degree ``2(r-1)`` product of two basis polynomials.
    """
    if spec.kind == FOURIER:
        return GramMatrix(np.eye(spec.size), basis=spec)
    knots = np.unique(spec.knot_array())
    W = np.zeros((spec.size, spec.size))
    for lo, hi in zip(knots[:-1], knots[1:]):
        if hi <= lo:
            continue
        pts, wts = gauss_legendre_span(lo, hi, spec.order)
        B = design_matrix(spec, pts)
        W += (B * wts[:, None]).T @ B
    W = 0.5 * (W + W.T)
    return GramMatrix(W, basis=spec)


def fit_coefficients(spec, curve):
    """Ordinary least-squares basis coefficients of a sampled curve.

    Raises :class:`UnderdeterminedFitError` (naming the curve) when there
    are fewer sample points than basis functions or the design matrix is
    rank deficient, e.g. all points in one knot span.
    """
    if len(curve) < spec.size:
        raise UnderdeterminedFitError(
            f"curve {curve.id!r}: {len(curve)} points cannot determine "
            f"{spec.size} coefficients",
            curve_id=curve.id,
        )
    design = design_matrix(spec, curve.arguments)
    coef, _, rank, _ = np.linalg.lstsq(design, curve.values, rcond=None)
    if rank < spec.size:
        raise UnderdeterminedFitError(
            f"curve {curve.id!r}: design matrix is rank deficient "
            f"({rank} < {spec.size}); sample points do not cover the basis",
            curve_id=curve.id,
        )
    return coef


def evaluate_curve(spec, coefficients, grid):
    """Evaluate a coefficient vector on a grid of arguments."""
    coefficients = np.asarray(coefficients, dtype=float).ravel()
    if coefficients.size != spec.size:
        raise ArgumentError(
            f"expected {spec.size} coefficients, got {coefficients.size}"
        )
    return design_matrix(spec, grid) @ coefficients
