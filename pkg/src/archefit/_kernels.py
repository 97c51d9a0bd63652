"""Numerical inner-loop kernels.

Every function in this module is written in a restricted numpy style that
numba can compile.  When numba is importable (and not disabled through the
``ARCHEFIT_DISABLE_NUMBA`` environment variable) the kernels are JIT
compiled; otherwise the exact same Python definitions run as plain numpy
code.  Results are identical up to floating-point noise, only speed
differs -- see ``benchmarks/benchmark.py`` for a comparison.

Set ``ARCHEFIT_DISABLE_NUMBA=1`` before importing the package to force the
pure-numpy path.
"""

import os

import numpy as np

_flag = os.environ.get("ARCHEFIT_DISABLE_NUMBA", "").strip()
_want_numba = _flag in ("", "0", "false", "False")

if _want_numba:
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dep, but be safe
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def _njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@_njit(cache=True)
def _equilibration(G):
    """Jacobi scaling factors 1/sqrt(diag); exactly-zero columns get 0.

    Normal equations can mix wildly scaled columns; without equilibration
    the least-squares rank cutoff silently discards small-but-valid
    coordinates and the active set cycles.
    """
    p = G.shape[0]
    d = np.zeros(p)
    for j in range(p):
        if G[j, j] > 0.0:
            d[j] = 1.0 / np.sqrt(G[j, j])
    return d


@_njit(cache=True)
def nnls_gram(G, c, rel_tol, max_iter):
    """Active-set non-negative least squares on normal equations.

    Solves ``min 0.5 w'Gw - c'w  s.t.  w >= 0`` for symmetric PSD ``G``,
    which is the KKT system of ``min ||u - Tw||`` with ``G = T'T`` and
    ``c = T'u`` (Lawson-Hanson structure, Gram form).  The system is
    Jacobi-equilibrated internally; ``rel_tol`` bounds the scaled dual at
    zero coordinates.

    Returns ``(w, status)`` where status 0 means the KKT conditions hold
    and 1 means the iteration cap was hit; in that case ``w`` is the best
    iterate found.
    """
    p = G.shape[0]
    d = _equilibration(G)
    Gs = np.empty((p, p))
    cs = np.empty(p)
    for a in range(p):
        cs[a] = d[a] * c[a]
        for b in range(p):
            Gs[a, b] = d[a] * G[a, b] * d[b]
    grad_tol = rel_tol * max(1.0, np.abs(cs).max())
    w = np.zeros(p)
    passive = np.zeros(p, np.bool_)
    dual = cs.copy()  # cs - Gs w, the negative gradient
    iters = 0
    while True:
        cand = np.where(passive, -np.inf, dual)
        j = np.argmax(cand)
        if cand[j] <= grad_tol:
            return w * d, 0
        passive[j] = True
        while True:
            iters += 1
            if iters > max_iter:
                return w * d, 1
            idx = np.nonzero(passive)[0]
            s = np.linalg.lstsq(np.ascontiguousarray(Gs[idx][:, idx]), cs[idx])[0]
            if np.all(s > 0.0):
                w[:] = 0.0
                w[idx] = s
                break
            # Step to the feasibility boundary and drop blocking coordinates.
            wp = w[idx]
            step = 1.0
            for a in range(idx.size):
                if s[a] <= 0.0:
                    denom = wp[a] - s[a]
                    ratio = wp[a] / denom if denom > 0.0 else 0.0
                    if ratio < step:
                        step = ratio
            moved = wp + step * (s - wp)
            drop_tol = 1e-13 * (1.0 + np.abs(moved).max())
            for a in range(idx.size):
                if s[a] <= 0.0 and moved[a] <= drop_tol:
                    moved[a] = 0.0
                    passive[idx[a]] = False
            w[idx] = moved
        dual = cs - Gs @ w


@_njit(cache=True)
def nnls_gram_batch(G, C, rel_tol, max_iter):
    """Solve one Gram-form NNLS problem per column of ``C``.

    Returns ``(W, status)`` with solutions in the rows of ``W``.
    """
    p, ncols = C.shape
    W = np.empty((ncols, p))
    status = np.zeros(ncols, np.int64)
    for i in range(ncols):
        w, st = nnls_gram(G, np.ascontiguousarray(C[:, i]), rel_tol, max_iter)
        W[i] = w
        status[i] = st
    return W, status


@_njit(cache=True)
def simplex_weights_from_products(P, idx, target_cols, hsq, rel_tol, max_iter):
    """Simplex-constrained mixture weights from cached inner products.

    ``P`` is the matrix of pairwise inner products of the observations,
    ``idx`` selects the mixture generators, and ``target_cols[i]`` indexes
    the observation to approximate.  The sum-to-one constraint is imposed
    through the usual huge-penalty row, which in Gram form adds ``hsq`` to
    every entry.  Returns the weight matrix (one row per target).
    """
    k = idx.size
    n = target_cols.size
    G = np.empty((k, k))
    for a in range(k):
        for b in range(k):
            G[a, b] = P[idx[a], idx[b]] + hsq
    W = np.empty((n, k))
    c = np.empty(k)
    for i in range(n):
        t = target_cols[i]
        for a in range(k):
            c[a] = P[idx[a], t] + hsq
        w, _ = nnls_gram(G, c, rel_tol, max_iter)
        W[i] = w
    return W


# Selected sets of size <= this use the cached-subset fast path in the
# swap scans (2^k inverse blocks are cached lazily per candidate set).
SMALL_K = 10


@_njit(cache=True)
def _nnls_gram_cached(G, c, rel_tol, max_iter, inv_cache, inv_ready, w):
    """Lawson-Hanson on a small pre-equilibrated Gram system with lazily
    cached sub-inverses.

    Same iteration as :func:`nnls_gram`, but each passive-set solve reuses
    the pseudo-inverse of the corresponding principal submatrix, keyed by
    the passive-set bitmask.  ``w`` is overwritten with the solution (in
    the equilibrated variables).
    """
    p = G.shape[0]
    grad_tol = rel_tol * max(1.0, np.abs(c).max())
    w[:] = 0.0
    pm = 0  # passive-set bitmask
    dual = c.copy()
    iters = 0
    while True:
        best = -1
        best_g = grad_tol
        for j in range(p):
            if not (pm >> j) & 1 and dual[j] > best_g:
                best_g = dual[j]
                best = j
        if best < 0:
            return 0
        pm |= 1 << best
        while True:
            iters += 1
            if iters > max_iter:
                return 1
            np_ = 0
            for j in range(p):
                if (pm >> j) & 1:
                    np_ += 1
            if not inv_ready[pm]:
                sub = np.empty((np_, np_))
                a = 0
                for ja in range(p):
                    if not (pm >> ja) & 1:
                        continue
                    b = 0
                    for jb in range(p):
                        if (pm >> jb) & 1:
                            sub[a, b] = G[ja, jb]
                            b += 1
                    a += 1
                inv_cache[pm, :np_, :np_] = np.linalg.pinv(sub)
                inv_ready[pm] = True
            # s = inv(G_PP) @ c_P
            s = np.zeros(p)
            a = 0
            for ja in range(p):
                if not (pm >> ja) & 1:
                    continue
                acc = 0.0
                b = 0
                for jb in range(p):
                    if (pm >> jb) & 1:
                        acc += inv_cache[pm, a, b] * c[jb]
                        b += 1
                s[ja] = acc
                a += 1
            ok = True
            for j in range(p):
                if (pm >> j) & 1 and s[j] <= 0.0:
                    ok = False
                    break
            if ok:
                for j in range(p):
                    w[j] = s[j] if (pm >> j) & 1 else 0.0
                break
            step = 1.0
            for j in range(p):
                if (pm >> j) & 1 and s[j] <= 0.0:
                    denom = w[j] - s[j]
                    ratio = w[j] / denom if denom > 0.0 else 0.0
                    if ratio < step:
                        step = ratio
            scale = 0.0
            for j in range(p):
                if (pm >> j) & 1:
                    w[j] = w[j] + step * (s[j] - w[j])
                    if abs(w[j]) > scale:
                        scale = abs(w[j])
            drop_tol = 1e-13 * (1.0 + scale)
            for j in range(p):
                if (pm >> j) & 1 and s[j] <= 0.0 and w[j] <= drop_tol:
                    w[j] = 0.0
                    pm &= ~(1 << j)
        for j in range(p):
            acc = c[j]
            for b in range(p):
                acc -= G[j, b] * w[b]
            dual[j] = acc


@_njit(cache=True)
def _mixture_rss_cached(P, idx, hsq, rel_tol, max_iter, G, inv_cache, inv_ready, w, c):
    n = P.shape[0]
    k = idx.size
    d = np.empty(k)
    for a in range(k):
        d[a] = 1.0 / np.sqrt(P[idx[a], idx[a]] + hsq)
    for a in range(k):
        for b in range(k):
            G[a, b] = d[a] * (P[idx[a], idx[b]] + hsq) * d[b]
    inv_ready[:] = False
    total = 0.0
    for i in range(n):
        for a in range(k):
            c[a] = d[a] * (P[idx[a], i] + hsq)
        _nnls_gram_cached(G, c, rel_tol, max_iter, inv_cache, inv_ready, w)
        cross = 0.0
        quad = 0.0
        for a in range(k):
            wa = w[a] * d[a]
            cross += wa * P[idx[a], i]
            for b in range(k):
                quad += wa * (w[b] * d[b]) * P[idx[a], idx[b]]
        ri = P[i, i] - 2.0 * cross + quad
        if ri > 0.0:
            total += ri
    return total


@_njit(cache=True)
def mixture_rss(P, idx, hsq, rel_tol, max_iter):
    """Total RSS of approximating every observation by a simplex mixture
    of the observations selected by ``idx``, using cached products ``P``.
    """
    n = P.shape[0]
    k = idx.size
    total = 0.0
    if k == 1:
        j = idx[0]
        for i in range(n):
            total += P[i, i] - 2.0 * P[i, j] + P[j, j]
        return total
    if k <= SMALL_K:
        G = np.empty((k, k))
        inv_cache = np.zeros((1 << k, k, k))
        inv_ready = np.zeros(1 << k, np.bool_)
        w = np.zeros(k)
        c = np.empty(k)
        return _mixture_rss_cached(
            P, idx, hsq, rel_tol, max_iter, G, inv_cache, inv_ready, w, c
        )
    G = np.empty((k, k))
    for a in range(k):
        for b in range(k):
            G[a, b] = P[idx[a], idx[b]] + hsq
    c = np.empty(k)
    for i in range(n):
        for a in range(k):
            c[a] = P[idx[a], i] + hsq
        w, _ = nnls_gram(G, c, rel_tol, max_iter)
        cross = 0.0
        quad = 0.0
        for a in range(k):
            cross += w[a] * P[idx[a], i]
            for b in range(k):
                quad += w[a] * w[b] * P[idx[a], idx[b]]
        ri = P[i, i] - 2.0 * cross + quad
        if ri > 0.0:
            total += ri
    return total


@_njit(cache=True)
def best_swap(P, idx, hsq, rel_tol, max_iter):
    """Scan all single exchanges of a selected index for an unselected one.

    Returns ``(pos, cand, rss)`` for the exchange with the lowest resulting
    RSS (ties broken by the lowest (selected index, candidate index) pair),
    or ``(-1, -1, inf)`` when there is nothing to scan.
    """
    n = P.shape[0]
    k = idx.size
    selected = np.zeros(n, np.bool_)
    for a in range(k):
        selected[idx[a]] = True
    # Scan positions in increasing order of the index they currently hold
    # so that the first strict improvement wins ties deterministically.
    order = np.argsort(idx)
    best_rss = np.inf
    best_pos = -1
    best_cand = -1
    trial = idx.copy()
    use_cache = 1 < k <= SMALL_K
    G = np.empty((k, k))
    c = np.empty(k)
    w = np.zeros(k)
    if use_cache:
        inv_cache = np.zeros((1 << k, k, k))
        inv_ready = np.zeros(1 << k, np.bool_)
    else:
        inv_cache = np.zeros((1, k, k))
        inv_ready = np.zeros(1, np.bool_)
    for o in range(k):
        pos = order[o]
        kept = idx[pos]
        for cand in range(n):
            if selected[cand]:
                continue
            trial[pos] = cand
            if use_cache:
                r = _mixture_rss_cached(
                    P, trial, hsq, rel_tol, max_iter, G, inv_cache, inv_ready, w, c
                )
            else:
                r = mixture_rss(P, trial, hsq, rel_tol, max_iter)
            if r < best_rss:
                best_rss = r
                best_pos = pos
                best_cand = cand
        trial[pos] = kept
    return best_pos, best_cand, best_rss


@_njit(cache=True)
def bspline_span(knots, degree, t, n_basis):
    """Index of the knot span containing ``t`` (clamped knot vector)."""
    lo = degree
    hi = n_basis  # one past the last valid span start
    if t >= knots[hi]:
        return hi - 1
    if t <= knots[lo]:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if t < knots[mid]:
            hi = mid
        else:
            lo = mid
    return lo


@_njit(cache=True)
def bspline_row(knots, degree, t, out):
    """All B-spline basis values at ``t`` via the Cox-de Boor recursion.

    ``out`` has length ``n_basis = len(knots) - degree - 1`` and is
    overwritten in place.
    """
    n_basis = out.size
    out[:] = 0.0
    span = bspline_span(knots, degree, t, n_basis)
    vals = np.zeros(degree + 1)
    left = np.zeros(degree + 1)
    right = np.zeros(degree + 1)
    vals[0] = 1.0
    for j in range(1, degree + 1):
        left[j] = t - knots[span + 1 - j]
        right[j] = knots[span + j] - t
        saved = 0.0
        for r in range(j):
            denom = right[r + 1] + left[j - r]
            term = vals[r] / denom if denom != 0.0 else 0.0
            vals[r] = saved + right[r + 1] * term
            saved = left[j - r] * term
        vals[j] = saved
    for r in range(degree + 1):
        out[span - degree + r] = vals[r]


@_njit(cache=True)
def bspline_design_jit(knots, degree, ts, n_basis):
    npts = ts.size
    design = np.zeros((npts, n_basis))
    for i in range(npts):
        bspline_row(knots, degree, ts[i], design[i])
    return design


def _bspline_design_numpy(knots, degree, ts, n_basis):
    """Vectorised Cox-de Boor over a whole grid (numpy fallback path)."""
    ts = np.asarray(ts, dtype=float)
    npts = ts.size
    spans = np.searchsorted(knots, ts, side="right") - 1
    spans = np.clip(spans, degree, n_basis - 1)
    vals = np.zeros((npts, degree + 1))
    left = np.zeros((npts, degree + 1))
    right = np.zeros((npts, degree + 1))
    vals[:, 0] = 1.0
    for j in range(1, degree + 1):
        left[:, j] = ts - knots[spans + 1 - j]
        right[:, j] = knots[spans + j] - ts
        saved = np.zeros(npts)
        for r in range(j):
            denom = right[:, r + 1] + left[:, j - r]
            term = np.where(denom != 0.0, vals[:, r] / np.where(denom == 0.0, 1.0, denom), 0.0)
            vals[:, r] = saved + right[:, r + 1] * term
            saved = left[:, j - r] * term
        vals[:, j] = saved
    design = np.zeros((npts, n_basis))
    cols = spans[:, None] - degree + np.arange(degree + 1)[None, :]
    design[np.arange(npts)[:, None], cols] = vals
    return design


def bspline_design(knots, degree, ts, n_basis):
    """Design matrix of all basis functions evaluated on a grid."""
    knots = np.ascontiguousarray(knots, dtype=float)
    ts = np.ascontiguousarray(ts, dtype=float)
    if NUMBA_ENABLED:
        return bspline_design_jit(knots, degree, ts, n_basis)
    return _bspline_design_numpy(knots, degree, ts, n_basis)


@_njit(cache=True)
def cholesky_lower(A):
    """Lower Cholesky factor of a symmetric matrix.

    Returns ``(L, fail)`` where ``fail`` is -1 on success or the index of
    the first non-positive pivot.
    """
    n = A.shape[0]
    L = np.zeros((n, n))
    for j in range(n):
        d = A[j, j]
        if j > 0:
            d -= np.dot(L[j, :j], L[j, :j])
        if d <= 0.0:
            return L, j
        L[j, j] = np.sqrt(d)
        if j + 1 < n:
            col = A[j + 1:, j].copy()
            if j > 0:
                col -= np.ascontiguousarray(L[j + 1:, :j]) @ np.ascontiguousarray(L[j, :j])
            L[j + 1:, j] = col / L[j, j]
    return L, -1
