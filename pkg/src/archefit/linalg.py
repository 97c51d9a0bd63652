"""Constrained least squares and SPD factorisation.

The workhorse is an active-set non-negative least squares solver in the
Lawson-Hanson mould, run on the normal equations.  ``simplex_ls`` turns it
into an approximately sum-to-one solver by appending a huge penalty row,
the classical trick for convex-combination fits.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ArgumentError, DataError, IterationLimitError, NotPositiveDefiniteError


@dataclass(frozen=True)
class SolverOptions:
    """Knobs of the constrained least-squares solvers.

    ``huge_weight`` is the penalty attached to the sum-to-one constraint in
    ``simplex_ls``; the default of 200 is calibrated for data on unit scale
    (fit drivers rescale it by the working data magnitude).  ``zero_tolerance``
    and ``max_active_set_iters`` default to ``1e-10 * max(1, max|T|)`` and
    ``3 * n_columns`` when left as ``None``.
    """

    huge_weight: float = 200.0
    max_active_set_iters: int | None = None
    zero_tolerance: float | None = None

    def __post_init__(self):
        if not self.huge_weight > 0:
            raise ArgumentError("huge_weight must be positive")
        if self.zero_tolerance is not None and not self.zero_tolerance > 0:
            raise ArgumentError("zero_tolerance must be positive")
        if self.max_active_set_iters is not None and self.max_active_set_iters < 1:
            raise ArgumentError("max_active_set_iters must be >= 1")

    def resolved(self, T):
        """(tolerance, iteration cap) for a concrete design matrix."""
        tol = self.zero_tolerance
        if tol is None:
            tol = 1e-10 * max(1.0, float(np.abs(T).max()))
        cap = self.max_active_set_iters
        if cap is None:
            cap = 3 * T.shape[1]
        return tol, cap


DEFAULT_OPTIONS = SolverOptions()


def _as_matrix(T, name):
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] < 1 or T.shape[1] < 1:
        raise ArgumentError(f"{name} must be a 2-d matrix, got shape {T.shape}")
    if not np.isfinite(T).all():
        raise DataError(f"{name} contains non-finite entries")
    return T


def _as_vector(u, length, name):
    u = np.asarray(u, dtype=float).ravel()
    if u.size != length:
        raise ArgumentError(f"{name} must have length {length}, got {u.size}")
    if not np.isfinite(u).all():
        raise DataError(f"{name} contains non-finite entries")
    return u


def nnls_solve(T, u, opts=DEFAULT_OPTIONS):
    """Solve ``min ||u - Tw||`` subject to ``w >= 0``.

    Parameters
    ----------
    T : (q, p) array_like
        Design matrix.
    u : (q,) array_like
        Target vector.
    opts : SolverOptions
        Tolerances and iteration cap.

    Returns
    -------
    (p,) ndarray
        A KKT point: active coordinates have ~zero gradient, zero
        coordinates have gradient >= -tolerance.

    Raises
    ------
    IterationLimitError
        If the active-set loop does not terminate within the cap; the best
        iterate is attached to the exception.
    """
    T = _as_matrix(T, "T")
    u = _as_vector(u, T.shape[0], "u")
    tol, cap = opts.resolved(T)
    G = T.T @ T
    c = T.T @ u
    w, status = _kernels.nnls_gram(G, c, tol, cap)
    if status != 0:
        raise IterationLimitError(
            f"NNLS did not converge within {cap} active-set iterations", best=w
        )
    return w


def simplex_ls(T, u, opts=DEFAULT_OPTIONS):
    """Least squares with weights (approximately) on the simplex.

    Appends a row of ``huge_weight`` to every column of ``T`` and the same
    value to ``u``, then solves the non-negative problem.  The returned
    weights are >= 0 and sum to 1 up to a defect that shrinks like
    ``1 / huge_weight**2``.
    """
    T = _as_matrix(T, "T")
    u = _as_vector(u, T.shape[0], "u")
    H = opts.huge_weight
    T2 = np.vstack([T, np.full((1, T.shape[1]), H)])
    u2 = np.append(u, H)
    return nnls_solve(T2, u2, opts)


def nnls_brute_force(T, u):
    """Exhaustive-enumeration NNLS oracle (testing aid, exponential cost).

    Solves the unconstrained least-squares problem on every subset of
    columns and returns the feasible solution with the smallest residual.
    Independent of the active-set path on purpose.
    """
    T = _as_matrix(T, "T")
    u = _as_vector(u, T.shape[0], "u")
    p = T.shape[1]
    if p > 20:
        raise ArgumentError("brute force enumeration is limited to 20 columns")
    best_w = np.zeros(p)
    best_r = float(u @ u)
    for mask in range(1, 1 << p):
        cols = [j for j in range(p) if mask >> j & 1]
        sol = np.linalg.lstsq(T[:, cols], u, rcond=None)[0]
        if (sol < 0).any():
            continue
        w = np.zeros(p)
        w[cols] = sol
        r = float(np.sum((u - T @ w) ** 2))
        if r < best_r - 1e-12 * max(1.0, best_r):
            best_r = r
            best_w = w
    return best_w


def cholesky_spd(W, jitter=0.0):
    """Lower Cholesky factor of a symmetric positive-definite matrix.

    Parameters
    ----------
    W : (m, m) array_like
        Symmetric (within 1e-10 relative tolerance) positive-definite matrix.
    jitter : float
        Optional multiple of the identity added before factorising, for
        callers retrying a marginally indefinite matrix.

    Raises
    ------
    NotPositiveDefiniteError
        On the first non-positive pivot; ``index`` reports where.
    """
    W = _as_matrix(W, "W")
    m = W.shape[0]
    if W.shape[1] != m:
        raise ArgumentError(f"W must be square, got shape {W.shape}")
    scale = max(1.0, float(np.abs(W).max()))
    if float(np.abs(W - W.T).max()) > 1e-10 * scale:
        raise ArgumentError("W is not symmetric within 1e-10 relative tolerance")
    A = 0.5 * (W + W.T)
    if jitter:
        A = A + jitter * np.eye(m)
    L, fail = _kernels.cholesky_lower(A)
    if fail >= 0:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: non-positive pivot at index {fail}",
            index=fail,
        )
    return L
