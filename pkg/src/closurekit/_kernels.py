"""Table-driven F_q kernels: batch polynomial evaluation and batch matrix rank.

Field elements are small integer codes; arithmetic goes through ``q x q``
lookup tables so the same kernels serve F_p and F_{p^2}.  The numba versions
are used unless ``CLOSUREKIT_DISABLE_JIT=1``; the numpy versions are the
reference path and the fallback when numba is missing.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised through the env flag
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_DISABLED = os.environ.get("CLOSUREKIT_DISABLE_JIT", "") not in ("", "0")
USE_JIT = numba is not None and not JIT_DISABLED


# ---------------------------------------------------------------------------
# numpy reference implementations


def eval_terms_numpy(coefs, exps, points, powtab, mul, add):
    """Evaluate ``sum coefs[t] * prod x_i^exps[t, i]`` at every row of ``points``."""
    npts = points.shape[0]
    out = np.zeros(npts, dtype=np.int64)
    for t in range(coefs.shape[0]):
        acc = np.full(npts, coefs[t], dtype=np.int64)
        for i in range(exps.shape[1]):
            e = exps[t, i]
            if e:
                acc = mul[acc, powtab[points[:, i], e]]
        out = add[out, acc]
    return out


def rank_batch_numpy(mats, add, mul, neg, inv):
    """Rank of every matrix in a ``(batch, rows, cols)`` stack of codes."""
    M = mats.copy()
    batch, rows, cols = M.shape
    ranks = np.zeros(batch, dtype=np.int64)
    for b in range(batch):
        A = M[b]
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + nz[0]
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            A[r] = mul[A[r], inv[A[r, c]]]
            below = np.arange(r + 1, rows)
            if below.size:
                f = A[below, c]
                # row_j <- row_j - f_j * row_r
                prod = mul[f[:, None], A[r][None, :]]
                A[below] = add[A[below], neg[prod]]
            r += 1
        ranks[b] = r
    return ranks


# ---------------------------------------------------------------------------
# numba kernels


if numba is not None:

    @numba.njit(cache=True)
    def _eval_terms_jit(coefs, exps, points, powtab, mul, add):
        npts = points.shape[0]
        nterms, nvars = exps.shape
        out = np.zeros(npts, dtype=np.int64)
        for p in range(npts):
            s = 0
            for t in range(nterms):
                acc = coefs[t]
                for i in range(nvars):
                    e = exps[t, i]
                    if e:
                        acc = mul[acc, powtab[points[p, i], e]]
                s = add[s, acc]
            out[p] = s
        return out

    @numba.njit(cache=True)
    def _rank_batch_jit(mats, add, mul, neg, inv):
        M = mats.copy()
        batch, rows, cols = M.shape
        ranks = np.zeros(batch, dtype=np.int64)
        for b in range(batch):
            r = 0
            for c in range(cols):
                if r == rows:
                    break
                piv = -1
                for i in range(r, rows):
                    if M[b, i, c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for j in range(cols):
                        tmp = M[b, r, j]
                        M[b, r, j] = M[b, piv, j]
                        M[b, piv, j] = tmp
                s = inv[M[b, r, c]]
                for j in range(cols):
                    M[b, r, j] = mul[M[b, r, j], s]
                for i in range(r + 1, rows):
                    f = M[b, i, c]
                    if f:
                        for j in range(cols):
                            M[b, i, j] = add[M[b, i, j], neg[mul[f, M[b, r, j]]]]
                r += 1
            ranks[b] = r
        return ranks


def eval_terms(coefs, exps, points, powtab, mul, add, jit: bool | None = None):
    if USE_JIT if jit is None else (jit and numba is not None):
        return _eval_terms_jit(coefs, exps, points, powtab, mul, add)
    return eval_terms_numpy(coefs, exps, points, powtab, mul, add)


def rank_batch(mats, add, mul, neg, inv, jit: bool | None = None):
    if USE_JIT if jit is None else (jit and numba is not None):
        return _rank_batch_jit(mats, add, mul, neg, inv)
    return rank_batch_numpy(mats, add, mul, neg, inv)
