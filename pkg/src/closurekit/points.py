"""Finite-field point enumeration over F_p and F_{p^2}, used as an independent oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels
from .poly import Poly, PolyRing, is_prime


@dataclass(frozen=True)
class FiniteField:
    """F_q for ``q = p`` or ``q = p^2``; element ``a + b*w`` is encoded as ``a + b*p``."""

    p: int
    degree: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.degree not in (1, 2):
            raise ValueError("only F_p and F_{p^2} are supported")

    @property
    def q(self) -> int:
        return self.p ** self.degree

    @cached_property
    def _square_rule(self):
        """``w^2 = s + t*w`` for an irreducible quadratic."""
        p = self.p
        if p == 2:
            return 1, 1
        squares = {(x * x) % p for x in range(p)}
        d = next(x for x in range(2, p) if x not in squares)
        return d, 0

    def _mul_pair(self, a, b):
        p = self.p
        a0, a1 = a % p, a // p
        b0, b1 = b % p, b // p
        if self.degree == 1:
            return (a0 * b0) % p
        s, t = self._square_rule
        hi = a1 * b1
        c0 = (a0 * b0 + hi * s) % p
        c1 = (a0 * b1 + a1 * b0 + hi * t) % p
        return c0 + c1 * p

    @cached_property
    def tables(self):
        p, q = self.p, self.q
        codes = np.arange(q)
        lo, hi = codes % p, codes // p
        add = ((lo[:, None] + lo[None, :]) % p) + ((hi[:, None] + hi[None, :]) % p) * p
        neg = ((-lo) % p) + ((-hi) % p) * p
        mul = np.array([[self._mul_pair(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        return add.astype(np.int64), mul, neg.astype(np.int64), inv

    def powtab(self, max_exp: int) -> np.ndarray:
        _, mul, _, _ = self.tables
        tab = np.zeros((self.q, max_exp + 1), dtype=np.int64)
        tab[:, 0] = 1
        for e in range(1, max_exp + 1):
            tab[:, e] = mul[tab[:, e - 1], np.arange(self.q)]
        return tab

    def scalar(self, c) -> int:
        """Image of a rational or prime-field coefficient."""
        p = self.p
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} has no image modulo {p}")
            return (c.numerator * pow(c.denominator, -1, p)) % p
        return int(c) % p

    def points(self, n: int) -> np.ndarray:
        if n == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(itertools.product(range(self.q), repeat=n)), dtype=np.int64)


def _check_ring(ring: PolyRing, F: FiniteField):
    if ring.characteristic not in (0, F.p):
        raise ValueError(f"ring of characteristic {ring.characteristic} evaluated over F_{F.q}")


def evaluate(poly: Poly, points: np.ndarray, F: FiniteField, jit: bool | None = None) -> np.ndarray:
    _check_ring(poly.ring, F)
    if not poly.terms:
        return np.zeros(points.shape[0], dtype=np.int64)
    exps = np.array(list(poly.terms.keys()), dtype=np.int64).reshape(len(poly.terms), poly.ring.nvars)
    coefs = np.array([F.scalar(c) for c in poly.terms.values()], dtype=np.int64)
    add, mul, _, _ = F.tables
    tab = F.powtab(int(exps.max()) if exps.size else 0)
    return _kernels.eval_terms(coefs, exps, points, tab, mul, add, jit=jit)


def variety(ring: PolyRing, F: FiniteField, extra=()) -> np.ndarray:
    """Points of ``F_q^n`` where the ring's relations (and ``extra``) vanish."""
    pts = F.points(ring.nvars)
    keep = np.ones(pts.shape[0], dtype=bool)
    for r in [Poly(ring, t) for t in ring.relation_terms] + list(extra):
        keep &= evaluate(r, pts, F) == 0
    return pts[keep]


def matrix_values(A, shape, points: np.ndarray, F: FiniteField) -> np.ndarray:
    rows, cols = shape
    out = np.zeros((points.shape[0], rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            out[:, i, j] = evaluate(A[i][j], points, F)
    return out


def ranks_at(A, shape, points: np.ndarray, F: FiniteField, jit: bool | None = None) -> np.ndarray:
    rows, cols = shape
    if rows == 0 or cols == 0:
        return np.zeros(points.shape[0], dtype=np.int64)
    add, mul, neg, inv = F.tables
    return _kernels.rank_batch(matrix_values(A, shape, points, F), add, mul, neg, inv, jit=jit)


# ---------------------------------------------------------------------------
# oracles


def pointwise_exact(alpha, beta, ring: PolyRing, F: FiniteField, alpha_shape, beta_shape) -> bool:
    """``R^a -> R^b -> R^c`` tensored with ``F_q`` at every point is exact."""
    pts = variety(ring, F)
    b = alpha_shape[0]
    ra = ranks_at(alpha, alpha_shape, pts, F)
    rb = ranks_at(beta, beta_shape, pts, F)
    return bool(np.all(ra + rb == b))


def fibers_solvable(D, m, ring: PolyRing, F: FiniteField, shape) -> tuple[bool, np.ndarray | None]:
    """Every fiber of the forcing algebra over an F_q-point is nonempty."""
    mu, nu = shape
    pts = variety(ring, F)
    rd = ranks_at(D, shape, pts, F) if nu else np.zeros(pts.shape[0], dtype=np.int64)
    Dm = [list(D[i]) + [m[i]] for i in range(mu)] if nu else [[m[i]] for i in range(mu)]
    rdm = ranks_at(Dm, (mu, nu + 1), pts, F)
    bad = np.nonzero(rd != rdm)[0]
    if bad.size:
        return False, pts[bad[0]]
    return True, None


def piece_mask(piece, pts: np.ndarray, F: FiniteField) -> np.ndarray:
    mask = evaluate(piece.multiplier, pts, F) != 0
    for c in piece.cut:
        mask &= evaluate(c, pts, F) == 0
    return mask


def partition_coverage(pieces, ring: PolyRing, F: FiniteField) -> np.ndarray:
    """Number of pieces containing each point of the variety (a partition gives all ones)."""
    pts = variety(ring, F)
    count = np.zeros(pts.shape[0], dtype=np.int64)
    for pc in pieces:
        count += piece_mask(pc, pts, F)
    return count
