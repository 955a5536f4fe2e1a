"""Ideal algebra and finitely presented modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Sequence

from .groebner import (GroebnerBasis, Membership, ModuleVector, groebner_basis,
                       submodule_member)
from .poly import Poly, PolyRing, RingMismatchError


class CharacteristicError(ValueError):
    pass


class CertificateDefect(RuntimeError):
    """A search that theory says must succeed did not."""


class Ideal:
    """A generator list in a ring; never auto-minimalized."""

    def __init__(self, ring: PolyRing, gens: Sequence = ()):
        self.ring = ring
        self.gens = tuple(ring(g) for g in gens)
        self._gb = None

    @classmethod
    def parse(cls, ring: PolyRing, text: str) -> Ideal:
        from .text import parse_polylist
        return cls(ring, parse_polylist(text, ring))

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_basis(list(self.gens), ring=self.ring)
        return self._gb

    def contains(self, f) -> bool:
        return self.gb().contains(self.ring(f))

    def __contains__(self, f):
        return self.contains(f)

    def nonzero_gens(self) -> list[Poly]:
        return [g for g in self.gens if not g.is_zero()]

    def is_zero(self) -> bool:
        return not self.nonzero_gens()

    def _check(self, other: Ideal):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __pow__(self, n: int) -> Ideal:
        return ideal_power(self, n)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return "Ideal(" + "; ".join(str(g) for g in self.gens) + ")"


def _dedupe(ring: PolyRing, polys) -> list[Poly]:
    out, seen = [], set()
    for f in polys:
        f = ring.reduce(f)
        if f.is_zero():
            continue
        key = frozenset(f.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    I._check(J)
    return Ideal(I.ring, _dedupe(I.ring, list(I.gens) + list(J.gens)))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    I._check(J)
    return Ideal(I.ring, _dedupe(I.ring, (f * g for f in I.nonzero_gens() for g in J.nonzero_gens())))


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative ideal power")
    if n == 0:
        return Ideal(I.ring, [I.ring.one()])
    gens = I.nonzero_gens()
    if not gens:
        return Ideal(I.ring, [])
    # products over multisets of generators
    from itertools import combinations_with_replacement
    prods = []
    for combo in combinations_with_replacement(range(len(gens)), n):
        prods.append(reduce(lambda a, b: a * b, (gens[i] for i in combo)))
    return Ideal(I.ring, _dedupe(I.ring, prods))


def frobenius_power(I: Ideal, e: int) -> Ideal:
    """``I^[q]``: generators raised to the ``q = p^e`` power, reduced in the quotient ring."""
    p = I.ring.characteristic
    if not p:
        raise CharacteristicError("Frobenius powers need positive characteristic")
    if e == 0:
        return I
    return Ideal(I.ring, _dedupe(I.ring, (g.frobenius(e) for g in I.gens)))


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    I._check(J)
    return I.gb() == J.gb()


def is_unit_ideal(I: Ideal) -> bool:
    return I.gb().is_unit()


# ---------------------------------------------------------------------------
# matrices and minors


Matrix = list  # list of rows of Poly


def matrix_shape(A: Matrix, nrows: int | None = None) -> tuple[int, int]:
    if not A:
        return (nrows or 0, 0)
    return len(A), len(A[0])


def matrix_columns(A: Matrix, ring: PolyRing) -> list[ModuleVector]:
    r, c = matrix_shape(A)
    return [ModuleVector([A[i][j] for i in range(r)], ring) for j in range(c)]


def matrix_from_columns(cols: Sequence[ModuleVector], rank: int, ring: PolyRing) -> Matrix:
    return [[c[i] for c in cols] for i in range(rank)]


def matmul(A: Matrix, B: Matrix, ring: PolyRing) -> Matrix:
    if not A or not B:
        return [[] for _ in A]
    n = len(B)
    if len(A[0]) != n:
        raise ValueError("matrix shapes do not compose")
    m = len(B[0])
    out = []
    for row in A:
        out_row = []
        for j in range(m):
            acc = ring.zero()
            for k in range(n):
                if row[k] and B[k][j]:
                    acc = acc + row[k] * B[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def determinant(M: Matrix, ring: PolyRing) -> Poly:
    """Cofactor expansion along rows with memoized column subsets."""
    n = len(M)
    if n == 0:
        return ring.one()
    memo: dict = {}

    def rec(row: int, cols: tuple) -> Poly:
        if row == n:
            return ring.one()
        if cols in memo:
            return memo[cols]
        acc = ring.zero()
        for pos, c in enumerate(cols):
            a = M[row][c]
            if a.is_zero():
                continue
            sub = rec(row + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(n)))


def minors(A: Matrix, k: int, ring: PolyRing, shape: tuple[int, int] | None = None) -> Ideal:
    """Ideal of all ``k x k`` minors; ``k = 0`` gives the unit ideal."""
    r, c = shape or matrix_shape(A)
    if k < 0 or k > min(r, c):
        raise ValueError(f"minor size {k} out of range for a {r}x{c} matrix")
    if k == 0:
        return Ideal(ring, [ring.one()])
    dets = []
    for rows in combinations(range(r), k):
        for cols in combinations(range(c), k):
            sub = [[A[i][j] for j in cols] for i in rows]
            d = determinant(sub, ring)
            if not d.is_zero():
                dets.append(d)
    return Ideal(ring, _dedupe(ring, dets))


def minors_or_zero(A: Matrix, k: int, ring: PolyRing, shape: tuple[int, int]) -> Ideal:
    """Like :func:`minors` but returns the zero ideal past the matrix size."""
    if k > min(shape):
        return Ideal(ring, [])
    return minors(A, k, ring, shape)


# ---------------------------------------------------------------------------
# radical membership


@dataclass
class RadicalMembership:
    member: bool
    exponent: int | None = None
    witness: Membership | None = None

    def __bool__(self):
        return self.member


def radical_cutoff(I: Ideal) -> int:
    degs = [g.degree() for g in I.nonzero_gens()] + [r.degree() for r in I.ring.relations]
    prod = 1
    for d in degs:
        prod *= d
    return 1 + prod


def rabinowitsch(I: Ideal, f: Poly) -> bool:
    """``1 in (I, 1 - t*f)`` in ``R[t]``."""
    R = I.ring
    f = R(f)
    if f.is_zero():
        return True
    ext = R.extend([_fresh(R)])
    t = ext.var(R.nvars)
    gens = [R.embed(g, ext) for g in I.nonzero_gens()] + [ext.one() - t * R.embed(f, ext)]
    return groebner_basis(gens, ring=ext).is_unit()


def _fresh(R: PolyRing, base="t") -> str:
    name = f"_{base}"
    while name in R.variables:
        name += "_"
    return name


def radical_member(I: Ideal, f, witness: bool = True) -> RadicalMembership:
    """Rabinowitsch test, then the least ``k`` with ``f^k in I`` by upward search."""
    R = I.ring
    f = R(f)
    if not rabinowitsch(I, f):
        return RadicalMembership(False)
    gb = I.gb()
    cutoff = radical_cutoff(I)
    nf = gb.reduce(R.one())
    for k in range(1, cutoff + 1):
        nf = gb.reduce(nf * f)
        if nf.is_zero():
            w = submodule_member(f ** k, list(I.gens)) if witness else None
            return RadicalMembership(True, k, w)
    raise CertificateDefect(f"f is in the radical but no f^k in I for k <= {cutoff}")


# ---------------------------------------------------------------------------
# finitely presented modules


class FPModule:
    """Cokernel of ``D: R^nu -> R^mu``; ``D`` is kept as its list of columns."""

    def __init__(self, ring: PolyRing, rank: int, columns: Sequence[ModuleVector] = ()):
        if rank < 1:
            raise ValueError("module rank must be at least 1")
        cols = [ModuleVector(c.entries if isinstance(c, ModuleVector) else c, ring) for c in columns]
        for c in cols:
            if len(c) != rank:
                raise ValueError(f"presentation column of length {len(c)}, expected {rank}")
        self.ring = ring
        self.rank = rank
        self.columns = cols

    @classmethod
    def free(cls, ring: PolyRing, rank: int) -> FPModule:
        return cls(ring, rank, [])

    @classmethod
    def from_matrix(cls, ring: PolyRing, rows: Matrix, rank: int | None = None) -> FPModule:
        if not rows:
            return cls(ring, rank or 1, [])
        return cls(ring, len(rows), matrix_columns(rows, ring))

    @property
    def matrix(self) -> Matrix:
        return matrix_from_columns(self.columns, self.rank, self.ring)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rank, len(self.columns))

    def __repr__(self):
        return f"FPModule(rank={self.rank}, columns={self.columns})"


def _vec(x, ring: PolyRing) -> ModuleVector:
    if isinstance(x, ModuleVector):
        return x
    if isinstance(x, Poly):
        return ModuleVector([x], ring)
    return ModuleVector([ring(e) for e in x], ring)


@dataclass
class SubmoduleData:
    """``N ⊆ M`` with an element ``m`` of ``M``, all as vectors of ``R^mu``."""

    M: FPModule
    N: list = field(default_factory=list)
    m: ModuleVector | None = None

    def __post_init__(self):
        R = self.M.ring
        self.N = [_vec(v, R) for v in self.N]
        if self.m is None:
            self.m = ModuleVector.zero(R, self.M.rank)
        self.m = _vec(self.m, R)
        for v in self.N + [self.m]:
            if len(v) != self.M.rank:
                raise ValueError(f"vector of length {len(v)} in a rank {self.M.rank} module")
            if v.ring != R:
                raise RingMismatchError("vector and module over different rings")

    @classmethod
    def ideal(cls, I: Ideal, f) -> SubmoduleData:
        R = I.ring
        return cls(FPModule.free(R, 1), [ModuleVector([g], R) for g in I.gens], ModuleVector([R(f)], R))

    @property
    def ring(self) -> PolyRing:
        return self.M.ring

    @property
    def rank(self) -> int:
        return self.M.rank

    def lifted_columns(self) -> list[ModuleVector]:
        """Generators of the preimage of ``N`` in ``R^mu``."""
        return list(self.N) + list(self.M.columns)

    def is_ideal_case(self) -> bool:
        return self.rank == 1 and not self.M.columns


def quotient_presentation(S: SubmoduleData) -> tuple[FPModule, ModuleVector]:
    """Presentation of ``M/N``: ``N``'s generators appended as columns of ``D``."""
    return FPModule(S.ring, S.rank, list(S.M.columns) + list(S.N)), S.m


def frobenius_module(Mbar: FPModule, m: ModuleVector, e: int) -> tuple[FPModule, ModuleVector]:
    """Base change along the ``e``-th Frobenius: entries raised to ``q = p^e``."""
    if not Mbar.ring.characteristic:
        raise CharacteristicError("Frobenius needs positive characteristic")
    if e == 0:
        return Mbar, m
    cols = [c.map(lambda x: x.frobenius(e)) for c in Mbar.columns]
    return FPModule(Mbar.ring, Mbar.rank, cols), ModuleVector([x.frobenius(e) for x in m], Mbar.ring)
