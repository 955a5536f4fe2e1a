"""Finite cochain complexes over Q or F_p: assembly from face maps and cohomology."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .poly import QQ, Field, PrimeField

_TABLE_LIMIT = 256  # largest p handled by the table-driven rank kernel


class ComplexConditionError(ValueError):
    pass


class CollapsePreconditionError(ValueError):
    pass


def parse_field(tag: str | Field) -> Field:
    if isinstance(tag, Field):
        return tag
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"F\((\d+)\)|GF\((\d+)\)", tag)
    if not m:
        raise ValueError(f"unknown coefficient field {tag!r}")
    return PrimeField(int(m.group(1) or m.group(2)))


def _matrix(K: Field, A, rows: int, cols: int) -> list[list]:
    M = [[K.convert(x) for x in row] for row in A] if rows and cols else [[K.zero] * cols for _ in range(rows)]
    if len(M) != rows or any(len(r) != cols for r in M):
        raise ValueError(f"expected a {rows} x {cols} matrix")
    return M


def _matmul(K: Field, A, B, n: int, k: int, m: int):
    """``A`` is ``n x k``, ``B`` is ``k x m``."""
    out = [[K.zero] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = K.zero
            for t in range(k):
                if A[i][t] and B[t][j]:
                    s = K.add(s, K.mul(A[i][t], B[t][j]))
            out[i][j] = s
    return out


def rank(K: Field, A, rows: int, cols: int) -> int:
    """Exact rank by Gaussian elimination (table kernel for small primes)."""
    if rows == 0 or cols == 0:
        return 0
    p = K.characteristic
    if p and p <= _TABLE_LIMIT:
        from .points import FiniteField
        add, mul, neg, inv = FiniteField(p).tables
        arr = np.array([[int(x) % p for x in row] for row in A], dtype=np.int64).reshape(1, rows, cols)
        return int(_kernels.rank_batch(arr, add, mul, neg, inv)[0])
    M = [list(r) for r in A]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = K.inv(M[r][c])
        M[r] = [K.mul(x, s) for x in M[r]]
        for i in range(r + 1, rows):
            f = M[i][c]
            if f:
                M[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


@dataclass
class CechComplex:
    """``C^0 -> C^1 -> ... -> C^n`` with ``differentials[k]`` of shape ``dims[k+1] x dims[k]``."""

    field: Field
    dims: list
    differentials: list

    def __post_init__(self):
        K = self.field = parse_field(self.field)
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be nonnegative")
        if len(self.differentials) != len(self.dims) - 1:
            raise ValueError(f"{len(self.dims)} spaces need {len(self.dims) - 1} differentials")
        self.differentials = [_matrix(K, D, self.dims[k + 1], self.dims[k])
                              for k, D in enumerate(self.differentials)]
        for k in range(len(self.differentials) - 1):
            a, b, c = self.dims[k], self.dims[k + 1], self.dims[k + 2]
            P = _matmul(K, self.differentials[k + 1], self.differentials[k], c, b, a)
            if any(x for row in P for x in row):
                raise ComplexConditionError(f"d_{k + 1} * d_{k} is not zero")

    def ranks(self) -> list[int]:
        return [rank(self.field, D, self.dims[k + 1], self.dims[k]) for k, D in enumerate(self.differentials)]

    @classmethod
    def from_json(cls, data: str | dict) -> CechComplex:
        d = json.loads(data) if isinstance(data, str) else data
        if "faces" in d:
            return from_faces(FaceData(d.get("field", "Q"), d["dims"], d["faces"]))
        return cls(d.get("field", "Q"), d["dims"], d["differentials"])


def cohomology_dims(C: CechComplex) -> list[int]:
    r = C.ranks() + [0]
    return [d - r[k] - (r[k - 1] if k else 0) for k, d in enumerate(C.dims)]


@dataclass
class FaceData:
    """Per level ``k`` the ``k+2`` face maps ``C^k -> C^{k+1}``."""

    field: Field
    dims: list
    faces: list

    def __post_init__(self):
        K = self.field = parse_field(self.field)
        if len(self.faces) != len(self.dims) - 1:
            raise ValueError(f"{len(self.dims)} spaces need {len(self.dims) - 1} face levels")
        levels = []
        for k, level in enumerate(self.faces):
            if len(level) != k + 2:
                raise ValueError(f"level {k} needs {k + 2} face maps, got {len(level)}")
            levels.append([_matrix(K, R, self.dims[k + 1], self.dims[k]) for R in level])
        self.faces = levels


def alternating_sum(F: FaceData, k: int):
    K = F.field
    rows, cols = F.dims[k + 1], F.dims[k]
    D = [[K.zero] * cols for _ in range(rows)]
    for t, R in enumerate(F.faces[k]):
        for i in range(rows):
            for j in range(cols):
                if R[i][j]:
                    D[i][j] = K.add(D[i][j], R[i][j]) if t % 2 == 0 else K.sub(D[i][j], R[i][j])
    return D


def from_faces(F: FaceData) -> CechComplex:
    """Differentials ``sum_t (-1)^t rho_t``; raises if they do not form a complex."""
    return CechComplex(F.field, list(F.dims), [alternating_sum(F, k) for k in range(len(F.faces))])


def collapse_check(F: FaceData) -> bool:
    """All faces per level equal isomorphisms: differentials alternate ``0, rho, 0, ...``.

    Returns whether that pattern holds and ``H^k = 0`` for ``1 <= k < n``; the
    top degree is a truncation artifact and is not checked.
    """
    K = F.field
    for k, level in enumerate(F.faces):
        first = level[0]
        if any(R != first for R in level[1:]):
            raise CollapsePreconditionError(f"faces at level {k} are not all equal")
        n, m = F.dims[k + 1], F.dims[k]
        if n != m or rank(K, first, n, m) != n:
            raise CollapsePreconditionError(f"faces at level {k} are not isomorphisms")
    C = from_faces(F)
    zero = K.zero
    for k, D in enumerate(C.differentials):
        expect_zero = k % 2 == 0
        is_zero = all(x == zero for row in D for x in row)
        if expect_zero != is_zero and F.dims[k]:
            return False
    h = cohomology_dims(C)
    return all(x == 0 for x in h[1:-1])


# ---------------------------------------------------------------------------
# fixtures


def two_axes_faces() -> FaceData:
    """Syzygy sheaf on the normalization of two crossing lines.

    ``C^0 = 0``; ``C^1`` holds the values at the isolated points ``P12, P21`` of
    ``Y x_X Y``; ``C^2`` the values at the six isolated points of the triple
    product.  Face ``t`` forgets the ``t``-th index; a function vanishes on
    ``P_ii`` since those lie on the lines.
    """
    deg1 = [(1, 2), (2, 1)]
    deg2 = [(1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 1, 1), (2, 1, 2), (2, 2, 1)]
    level1 = []
    for t in range(3):
        R = [[0, 0] for _ in deg2]
        for i, P in enumerate(deg2):
            Q = P[:t] + P[t + 1:]
            if Q in deg1:
                R[i][deg1.index(Q)] = 1
        level1.append(R)
    level0 = [[[] for _ in deg1], [[] for _ in deg1]]
    return FaceData("Q", [0, 2, 6], [level0, level1])


def constant_faces(field="Q", dim: int = 2, length: int = 4, matrix=None) -> FaceData:
    """Every face at every level equal to the same isomorphism (identity by default)."""
    M = matrix or [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    return FaceData(field, [dim] * (length + 1), [[M] * (k + 2) for k in range(length)])
