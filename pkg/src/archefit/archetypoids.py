"""Archetypoid analysis: extremal profiles constrained to be observations.

The continuous archetype problem becomes combinatorial when each archetype
must be an actual data row.  It is attacked PAM-style: three candidate
sets derived from a fitted archetype model seed a best-improvement swap
search, and the lowest-RSS local optimum wins.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .archetypes import (
    FitOptions,
    _check_data,
    _check_k,
    _solver_rel_tol,
    fit_archetypes,
    penalty_scale,
    standardize_columns,
    working_matrix,
)
from .errors import ArgumentError
from .linalg import SolverOptions

CAND_NS = "cand_ns"
CAND_ALPHA = "cand_alpha"
CAND_BETA = "cand_beta"
EXPLICIT = "explicit"

# Relative RSS improvement a swap must deliver to be accepted; guards
# against cycling on numerical ties.
SWAP_REL_TOL = 1e-9


@dataclass
class ADAModel:
    """A fitted archetypoid model.

    ``indices`` are the selected observations (0-based row numbers),
    ``alpha`` the simplex weights of every observation over them.
    """

    k: int
    indices: np.ndarray
    alpha: np.ndarray
    rss: float
    init_used: str
    swap_steps: int


def _dedupe_ranked(rankings, k):
    """One index per slot, walking each slot's ranking past duplicates."""
    chosen = []
    for j in range(k):
        for cand in rankings[j]:
            if cand not in chosen:
                chosen.append(int(cand))
                break
        else:
            raise ArgumentError("could not find k distinct candidate indices")
    return np.array(chosen, dtype=np.int64)


def build_candidates(X, aa, which, metric=None):
    """Initial archetypoid candidates derived from an archetype model.

    ``which`` selects the criterion: ``cand_ns`` takes the observation
    nearest to each archetype (distance in the metric), ``cand_alpha`` the
    observation leaning most on each archetype, ``cand_beta`` the
    observation contributing most to each archetype.  Duplicates are
    replaced by the next best index under the same criterion.
    """
    X = _check_data(X)
    if aa.alpha.shape[0] != X.shape[0]:
        raise ArgumentError(
            f"model was fitted on {aa.alpha.shape[0]} rows, data has {X.shape[0]}"
        )
    k = aa.k
    if which == CAND_NS:
        Y = working_matrix(X, metric)
        ZY = aa.beta @ Y
        d2 = (
            np.sum(Y * Y, axis=1)[:, None]
            - 2.0 * Y @ ZY.T
            + np.sum(ZY * ZY, axis=1)[None, :]
        )
        rankings = [np.argsort(d2[:, j], kind="stable") for j in range(k)]
    elif which == CAND_ALPHA:
        rankings = [np.argsort(-aa.alpha[:, j], kind="stable") for j in range(k)]
    elif which == CAND_BETA:
        rankings = [np.argsort(-aa.beta[j], kind="stable") for j in range(k)]
    else:
        raise ArgumentError(
            f"which must be one of {CAND_NS!r}, {CAND_ALPHA!r}, {CAND_BETA!r}; got {which!r}"
        )
    return _dedupe_ranked(rankings, k)


def _alpha_for_indices(Y, P, indices, hsq, grad_tol, cap):
    n = Y.shape[0]
    if indices.size == 1:
        return np.ones((n, 1))
    targets = np.arange(n, dtype=np.int64)
    return _kernels.simplex_weights_from_products(P, indices, targets, hsq, grad_tol, cap)


def _rss_for_indices(Y, alpha, indices):
    resid = Y - alpha @ Y[indices]
    return float(np.sum(resid * resid))


def swap_optimize(X, init, metric=None, solver=None, init_used=EXPLICIT):
    """Improve a set of archetypoid indices by single exchanges.

    Scans all (selected, unselected) pairs, applies the exchange with the
    largest RSS decrease, and repeats until no exchange improves the RSS
    by more than a relative ``1e-9``.  The final scan doubles as the
    verification that no improving swap remains.
    """
    X = _check_data(X)
    solver = solver or SolverOptions()
    n = X.shape[0]
    indices = np.asarray(init, dtype=np.int64).ravel()
    if indices.size < 1 or indices.size > n:
        raise ArgumentError(f"need between 1 and {n} indices, got {indices.size}")
    if np.unique(indices).size != indices.size:
        raise ArgumentError("initial indices must be distinct")
    if indices.min() < 0 or indices.max() >= n:
        raise ArgumentError("initial indices out of range")

    Y = working_matrix(X, metric)
    P = Y @ Y.T
    hsq = penalty_scale(Y, solver)
    grad_tol = _solver_rel_tol(solver)
    cap = solver.max_active_set_iters or max(3 * n, 30)

    current = indices.copy()
    rss = _kernels.mixture_rss(P, current, hsq, grad_tol, cap)
    steps = 0
    while current.size < n:
        pos, cand, best_rss = _kernels.best_swap(P, current, hsq, grad_tol, cap)
        if pos < 0 or rss - best_rss <= SWAP_REL_TOL * max(rss, 1e-300):
            break
        current[pos] = cand
        rss = best_rss
        steps += 1

    alpha = _alpha_for_indices(Y, P, current, hsq, grad_tol, cap)
    return ADAModel(
        k=current.size,
        indices=current,
        alpha=alpha,
        rss=_rss_for_indices(Y, alpha, current),
        init_used=init_used,
        swap_steps=steps,
    )


def fit_archetypoids(X, k, opts=None, metric=None, solver=None):
    """Fit ``k`` archetypoids: BUILD three candidate sets, SWAP from each.

    An archetype model supplies the candidates; the swap search runs from
    all three and the lowest-RSS solution is returned (``init_used``
    records which seeding won).
    """
    opts = opts or FitOptions()
    X = _check_data(X)
    if opts.standardize:
        X, _, _ = standardize_columns(X)
        opts = replace(opts, standardize=False)
    n = X.shape[0]
    k = _check_k(k, n)
    aa = fit_archetypes(X, k, opts=opts, metric=metric, solver=solver)
    best = None
    for which in (CAND_NS, CAND_ALPHA, CAND_BETA):
        init = build_candidates(X, aa, which, metric=metric)
        model = swap_optimize(X, init, metric=metric, solver=solver, init_used=which)
        if best is None or model.rss < best.rss:
            best = model
    return best
