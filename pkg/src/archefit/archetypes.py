"""Archetype analysis: alternating simplex-constrained least squares.

Data rows are approximated by convex combinations of ``k`` archetypes,
which are themselves convex combinations of the data rows.  The fit
alternates between the mixture weights (``alpha``) and the archetype
composition (``beta``), each step a batch of penalised non-negative least
squares problems, and keeps the best of several random restarts.

A quadratic-form metric can be supplied; it is folded into the data once
through its Cholesky factor, after which the identity-metric algorithm
runs unchanged.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ArgumentError, DataError
from .linalg import SolverOptions, cholesky_spd


@dataclass(frozen=True)
class FitOptions:
    """Options shared by the fitting drivers.

    ``restarts`` random initialisations are run and the lowest-RSS model
    wins (ties go to the lowest restart index).  A sweep is accepted only
    if it does not increase the RSS; improvement below ``rel_tol``
    (relative) stops a run.
    """

    restarts: int = 10
    max_outer_iters: int = 100
    rel_tol: float = 1e-6
    seed: int = 0
    standardize: bool = False

    def __post_init__(self):
        if self.restarts < 1:
            raise ArgumentError("restarts must be >= 1")
        if self.max_outer_iters < 1:
            raise ArgumentError("max_outer_iters must be >= 1")
        if not self.rel_tol > 0:
            raise ArgumentError("rel_tol must be positive")


@dataclass
class AAModel:
    """A fitted archetype model.

    ``alpha`` (n x k) holds the mixture weights of each observation over
    the archetypes, ``beta`` (k x n) the composition of each archetype
    over the observations, and ``archetypes`` (k x m) equals
    ``beta @ X`` for the fitting data.
    """

    k: int
    alpha: np.ndarray
    beta: np.ndarray
    archetypes: np.ndarray
    rss: float
    iterations: int
    converged: bool


@dataclass
class ElbowRow:
    k: int
    rss: float
    converged: bool
    restarts_used: int


@dataclass
class ElbowReport:
    """RSS as a function of k; pick the elbow by eye, nothing automatic."""

    rows: list = field(default_factory=list)

    def ks(self):
        return [r.k for r in self.rows]

    def rss_values(self):
        return [r.rss for r in self.rows]


def standardize_columns(X):
    """Column z-scores. Returns (standardised X, means, sample sds)."""
    X = np.asarray(X, dtype=float)
    means = X.mean(axis=0)
    sds = X.std(axis=0, ddof=1) if X.shape[0] > 1 else np.ones(X.shape[1])
    if np.any(sds < 1e-12):
        raise DataError("cannot standardize: a column has ~zero variance")
    return (X - means) / sds, means, sds


def _check_data(X):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise ArgumentError(f"data must be a 2-d matrix, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise DataError("data contains non-finite entries")
    return X


def _check_k(k, n):
    if not isinstance(k, (int, np.integer)):
        raise ArgumentError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if k > n:
        raise ArgumentError(f"k must be <= n = {n}, got {k}")
    return int(k)


def working_matrix(X, metric):
    """Fold a metric into the data: rows y_i = L' x_i with metric = L L'.

    Squared Euclidean norms of the returned rows equal the metric
    quadratic form on the original rows.  Returns ``X`` itself for an
    exactly-identity metric so downstream results are bit-identical to the
    plain Euclidean fit.
    """
    if metric is None:
        return X
    if metric.size != X.shape[1]:
        raise ArgumentError(
            f"metric has size {metric.size} but data has {X.shape[1]} columns"
        )
    if metric.is_identity():
        return X
    return X @ cholesky_spd(metric.values)


def penalty_scale(Y, solver):
    """Squared huge-penalty value used in the simplex fits for data ``Y``.

    ``huge_weight`` is calibrated for unit-scale data, so it is multiplied
    by the RMS row norm; without this the sum-to-one defect would grow
    with the data magnitude.
    """
    rms = float(np.sqrt(np.mean(np.sum(Y * Y, axis=1))))
    h = solver.huge_weight * max(1.0, rms)
    return h * h


def _solver_rel_tol(solver):
    return solver.zero_tolerance if solver.zero_tolerance is not None else 1e-10


def _alpha_step(Y, Z, hsq, grad_tol, cap):
    """Best simplex weights of every data row over the archetypes."""
    G = Z @ Z.T + hsq
    C = Z @ Y.T + hsq
    alpha, _ = _kernels.nnls_gram_batch(G, C, grad_tol, cap)
    return alpha


def _beta_step(Y, P, alpha, hsq, grad_tol, cap):
    """Refit each archetype as a simplex mixture of the data rows.

    The target of archetype j is its unconstrained ideal: the least-squares
    solution of ``alpha @ Z ~ Y``.
    """
    ideal = np.linalg.lstsq(alpha, Y, rcond=None)[0]
    C = Y @ ideal.T + hsq
    G = P + hsq
    beta, _ = _kernels.nnls_gram_batch(G, C, grad_tol, cap)
    return beta


def _rss_value(Y, alpha, Z):
    resid = Y - alpha @ Z
    return float(np.sum(resid * resid))


def _fit_single(Y, P, k, opts, hsq, grad_tol, cap, rng, trace):
    n = Y.shape[0]
    sel = rng.choice(n, size=k, replace=False)
    beta = np.zeros((k, n))
    beta[np.arange(k), sel] = 1.0
    Z = Y[sel].copy()
    alpha = _alpha_step(Y, Z, hsq, grad_tol, cap)
    rss = _rss_value(Y, alpha, Z)
    if trace is not None:
        trace.append(_sweep_record(rss, alpha, beta))
    iterations = 0
    converged = False
    for _ in range(opts.max_outer_iters):
        beta_new = _beta_step(Y, P, alpha, hsq, grad_tol, cap)
        Z_new = beta_new @ Y
        alpha_new = _alpha_step(Y, Z_new, hsq, grad_tol, cap)
        rss_new = _rss_value(Y, alpha_new, Z_new)
        if rss_new > rss:
            # The composition projection can overshoot; keep the previous
            # state rather than accept an increase.
            converged = True
            break
        alpha, beta, Z = alpha_new, beta_new, Z_new
        iterations += 1
        if trace is not None:
            trace.append(_sweep_record(rss_new, alpha, beta))
        if rss - rss_new <= opts.rel_tol * max(rss, 1e-300):
            rss = rss_new
            converged = True
            break
        rss = rss_new
    return alpha, beta, Z, rss, iterations, converged


def _sweep_record(rss, alpha, beta):
    return {
        "rss": rss,
        "alpha_min": float(alpha.min()),
        "beta_min": float(beta.min()),
        "alpha_sum_err": float(np.abs(alpha.sum(axis=1) - 1.0).max()),
        "beta_sum_err": float(np.abs(beta.sum(axis=1) - 1.0).max()),
    }


def fit_archetypes(X, k, opts=None, metric=None, solver=None, trace=None):
    """Fit ``k`` archetypes to the rows of ``X``.

    Parameters
    ----------
    X : (n, m) array_like
        Observations in rows.
    k : int
        Number of archetypes, ``1 <= k <= n``.
    opts : FitOptions
        Restart/convergence options.
    metric : GramMatrix, optional
        Quadratic form replacing the Euclidean norm in the RSS.
    solver : SolverOptions, optional
        Penalised-NNLS options for the simplex subproblems.
    trace : list, optional
        When given, one list of per-sweep records is appended per restart
        (diagnostics for descent/feasibility checks).

    Returns
    -------
    AAModel
        Best model over the restarts.  ``archetypes`` is expressed in the
        (possibly standardised) data coordinates; the stored ``rss`` is
        measured in the metric.
    """
    opts = opts or FitOptions()
    solver = solver or SolverOptions()
    X = _check_data(X)
    n = X.shape[0]
    k = _check_k(k, n)
    if opts.standardize:
        X, _, _ = standardize_columns(X)
    Y = working_matrix(X, metric)

    if k == 1:
        # Degenerate subproblems: every weight is 1, the archetype is the mean.
        alpha = np.ones((n, 1))
        beta = np.full((1, n), 1.0 / n)
        Z = beta @ Y
        rss = _rss_value(Y, alpha, Z)
        if trace is not None:
            trace.append([_sweep_record(rss, alpha, beta)])
        return AAModel(
            k=1, alpha=alpha, beta=beta, archetypes=beta @ X,
            rss=rss, iterations=0, converged=True,
        )

    P = Y @ Y.T
    hsq = penalty_scale(Y, solver)
    grad_tol = _solver_rel_tol(solver)
    cap = solver.max_active_set_iters or max(3 * n, 3 * k, 30)

    best = None
    for r in range(opts.restarts):
        rng = np.random.default_rng([opts.seed, r])
        run_trace = [] if trace is not None else None
        result = _fit_single(Y, P, k, opts, hsq, grad_tol, cap, rng, run_trace)
        if trace is not None:
            trace.append(run_trace)
        if best is None or result[3] < best[3]:
            best = result
    alpha, beta, _, rss, iterations, converged = best
    return AAModel(
        k=k, alpha=alpha, beta=beta, archetypes=beta @ X,
        rss=rss, iterations=iterations, converged=converged,
    )


def rss(X, alpha, Z, metric=None):
    """Residual sum of squares of ``X ~ alpha @ Z`` under the metric."""
    X = _check_data(X)
    alpha = np.asarray(alpha, dtype=float)
    Z = np.asarray(Z, dtype=float)
    if alpha.shape != (X.shape[0], Z.shape[0]) or Z.shape[1] != X.shape[1]:
        raise ArgumentError(
            f"shape mismatch: X {X.shape}, alpha {alpha.shape}, Z {Z.shape}"
        )
    resid = X - alpha @ Z
    if metric is None:
        return float(np.sum(resid * resid))
    if metric.size != X.shape[1]:
        raise ArgumentError(
            f"metric has size {metric.size} but data has {X.shape[1]} columns"
        )
    return float(np.sum((resid @ metric.values) * resid))


def elbow_scan(X, ks, opts=None, metric=None, solver=None):
    """Best RSS per k, for reading the elbow off a plot.

    Failures for individual k are recorded as non-converged NaN rows
    rather than aborting the scan.
    """
    X = _check_data(X)
    ks = [int(k) for k in ks]
    if any(k2 <= k1 for k1, k2 in zip(ks, ks[1:])):
        raise ArgumentError("ks must be strictly increasing")
    opts = opts or FitOptions()
    report = ElbowReport()
    for k in ks:
        try:
            model = fit_archetypes(X, k, opts=opts, metric=metric, solver=solver)
            report.rows.append(ElbowRow(k, model.rss, model.converged, opts.restarts))
        except (ArgumentError, DataError):
            raise
        except Exception:
            report.rows.append(ElbowRow(k, float("nan"), False, opts.restarts))
    return report
